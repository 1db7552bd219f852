// Copyright 2026 The mvgini Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MVGINI__TYPES_HPP_
#define MVGINI__TYPES_HPP_

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace mvgini
{

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Base of all library errors.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Input data is unusable: non-finite values, bad weights, unreadable or malformed files.
class DataError : public Error
{
public:
  using Error::Error;
};

/// A numerical precondition failed: singular or indefinite matrices, zero means.
class NumericalError : public Error
{
public:
  using Error::Error;
};

}  // namespace mvgini

#endif  // MVGINI__TYPES_HPP_
