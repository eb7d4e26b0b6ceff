// Copyright 2026 The iosynth Authors
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

// Worker process serving the reference executor over the wire protocol.
// Stands in for the host-language worker in tests and offline runs.

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "iosynth/reference_executor.hpp"
#include "iosynth/subprocess.hpp"

using namespace iosynth;

namespace {

// Diagnostic sources that misbehave at the process level.
bool misbehave(const ExecRequest& req) {
  if (req.op != ExecOp::Call) return false;
  if (req.source == "builtin:crash") std::_Exit(3);
  if (req.source == "builtin:hang") {
    for (;;) ::pause();
  }
  if (req.source == "builtin:garble") {
    std::cout << "this is not a frame" << std::endl;
    return true;
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iosynth reference worker"};
  bool diagnostics = false;
  bool lexical_transform = false;
  std::string config_path;
  app.add_flag("--diagnostics", diagnostics, "serve diagnostic builtins");
  app.add_flag("--lexical-transform", lexical_transform, "offer the token-level anonymize transform");
  app.add_option("config", config_path, "WorkerConfig file")->required();
  CLI11_PARSE(app, argc, argv);

  WorkerConfig config;
  try {
    std::ifstream in(config_path);
    if (!in) throw FrameError("cannot read " + config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    config = decode_worker_config(text);
  } catch (const FrameError& e) {
    std::cerr << "iosynth-refworker: bad config: " << e.what() << '\n';
    return 2;
  }

  ReferenceExecutor exec({diagnostics, lexical_transform});
  ExecResponse hello;
  hello.health = exec.health();
  std::cout << encode_response(hello) << std::endl;

  std::string line;
  while (std::getline(std::cin, line)) {
    try {
      ExecRequest req = decode_request(line);
      if (diagnostics && misbehave(req)) continue;
      req.limits.timeout_ms = std::min(req.limits.timeout_ms, config.hard_timeout_ms);
      req.limits.max_recursion_hint = std::min(req.limits.max_recursion_hint, config.recursion_limit);
      std::cout << serve_frame(exec, encode_request(req)) << std::endl;
    } catch (const FrameError&) {
      std::cout << serve_frame(exec, line) << std::endl;
    }
  }
  return 0;
}
