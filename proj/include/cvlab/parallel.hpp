/* Copyright 2026 The cvlab Authors
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
 *
 */

#pragma once

namespace cvlab {

enum class Execution { serial, parallel };

/// Number of OpenMP workers used by the parallel kernels.
int worker_count();
void set_worker_count(int n);

/// Sets the worker count for the lifetime of the object.
class ScopedWorkers {
 public:
  explicit ScopedWorkers(int n) : previous_(worker_count()) { set_worker_count(n); }
  ~ScopedWorkers() { set_worker_count(previous_); }
  ScopedWorkers(const ScopedWorkers&)            = delete;
  ScopedWorkers& operator=(const ScopedWorkers&) = delete;

 private:
  int previous_;
};

}  // namespace cvlab
