/* Copyright (C) 2026 the mrftest authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef MRFTEST_ERRORS_HPP
#define MRFTEST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mrftest {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested size is empty, negative (conceptually) or overflows.
class invalid_size_error : public error {
 public:
  using error::error;
};

/// A node or edge index is out of range.
class index_error : public error {
 public:
  using error::error;
};

/// An edge class appears in a graph but has no coupling entry.
class missing_parameter_error : public error {
 public:
  using error::error;
};

/// A numeric argument lies outside its mathematical domain.
class domain_error : public error {
 public:
  using error::error;
};

/// An algorithm that requires an acyclic graph was handed a cyclic one,
/// or vice versa.
class structure_error : public error {
 public:
  using error::error;
};

/// Enumeration was requested on a graph too large to enumerate.
class size_error : public error {
 public:
  using error::error;
};

/// A parameter became non-finite during gradient ascent.
class divergence_error : public error {
 public:
  using error::error;
};

/// The posterior carries (numerically) no evidence of alternatives.
class degenerate_posterior_error : public error {
 public:
  using error::error;
};

/// A scenario or configuration file is malformed or inconsistent.
class config_error : public error {
 public:
  using error::error;
};

/// A file could not be read, written or parsed.
class io_error : public error {
 public:
  using error::error;
};

}  // namespace mrftest

#endif  // MRFTEST_ERRORS_HPP
