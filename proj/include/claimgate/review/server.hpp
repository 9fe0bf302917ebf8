/*
 * Copyright 2026 The Claimgate Authors
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

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "claimgate/common/error.hpp"
#include "claimgate/review/store.hpp"

namespace claimgate::review {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::optional<std::filesystem::path> static_dir;  // built UI assets, served at /
  std::string default_annotator = "annotator";
};

// HTTP status for an error code: 400, 404, 409, 422 or 500.
int http_status(ErrorCode code);

// JSON API over a ReviewStore:
//   GET  /candidates?status=&domain=&page=&page_size=
//   GET  /candidates/{id}
//   GET  /candidates/{id}/image
//   POST /candidates/{id}/decision  {decision, note?, annotator?, expected_status?}
//   GET  /stats
// Errors are {"code", "message"} with the kebab-case error code.
class ReviewServer {
 public:
  ReviewServer(ReviewStore& store, ServerOptions options);
  ~ReviewServer();
  ReviewServer(const ReviewServer&) = delete;
  ReviewServer& operator=(const ReviewServer&) = delete;

  // Binds and returns the port. Errors: io when the address is taken.
  int bind();
  // Serves until stop(); call bind() first.
  void listen();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace claimgate::review
