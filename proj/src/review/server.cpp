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

#include "claimgate/review/server.hpp"

#include <httplib.h>

#include "claimgate/common/error.hpp"

namespace claimgate::review {

namespace fs = std::filesystem;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownCandidate: return 404;
    case ErrorCode::kConflict: return 409;
    case ErrorCode::kGatingViolation: return 422;
    case ErrorCode::kInvalidRequest:
    case ErrorCode::kSchemaViolation:
    case ErrorCode::kUsage: return 400;
    default: return 500;
  }
}

struct ReviewServer::Impl {
  ReviewStore& store;
  ServerOptions options;
  httplib::Server server;
  int port = -1;

  Impl(ReviewStore& s, ServerOptions o) : store(s), options(std::move(o)) {}
};

namespace {

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, ErrorCode code, const std::string& message) {
  send_json(res, http_status(code), {{"code", std::string(code_name(code))}, {"message", message}});
}

std::size_t positive(const httplib::Request& req, const char* key, std::size_t fallback) {
  if (!req.has_param(key)) return fallback;
  const auto raw = req.get_param_value(key);
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != raw.size() || v == 0) {
    throw Error(ErrorCode::kInvalidRequest, std::string(key) + " must be a positive integer");
  }
  return v;
}

template <typename F>
auto guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, e.code(), e.what());
    } catch (const Json::exception& e) {
      send_error(res, ErrorCode::kInvalidRequest, e.what());
    } catch (const std::exception& e) {
      send_error(res, ErrorCode::kIo, e.what());
    }
  };
}

std::string mime_for(const fs::path& p) {
  auto ext = p.extension().string();
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".gif") return "image/gif";
  if (ext == ".webp") return "image/webp";
  return "application/octet-stream";
}

}  // namespace

ReviewServer::ReviewServer(ReviewStore& store, ServerOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {
  auto& s = impl_->server;
  Impl* self = impl_.get();

  s.Get("/candidates", guarded([self](const httplib::Request& req, httplib::Response& res) {
    CandidateFilter f;
    if (req.has_param("status")) {
      try {
        f.status = graphgen::candidate_status_from_string(req.get_param_value("status"));
      } catch (const Error& e) {
        throw Error(ErrorCode::kInvalidRequest, e.what());
      }
    }
    if (req.has_param("domain")) {
      try {
        f.domain = graphgen::domain_from_string(req.get_param_value("domain"));
      } catch (const Error& e) {
        throw Error(ErrorCode::kInvalidRequest, e.what());
      }
    }
    f.page = positive(req, "page", 1);
    f.page_size = std::min<std::size_t>(positive(req, "page_size", 50), 500);
    send_json(res, 200, self->store.list(f).to_json());
  }));

  s.Get(R"(/candidates/([^/]+))", guarded([self](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, self->store.view(req.matches[1]));
  }));

  s.Get(R"(/candidates/([^/]+)/image)", guarded([self](const httplib::Request& req, httplib::Response& res) {
    auto path = self->store.image_path(req.matches[1]);
    if (!path) throw Error(ErrorCode::kUnknownCandidate, "candidate has no image evidence");
    res.set_content(read_file(*path), mime_for(*path));
  }));

  s.Post(R"(/candidates/([^/]+)/decision)", guarded([self](const httplib::Request& req, httplib::Response& res) {
    Json body = Json::parse(req.body);
    if (!body.is_object()) throw Error(ErrorCode::kInvalidRequest, "body must be a JSON object");
    const std::string id = req.matches[1];
    if (body.contains("candidate_id") && body["candidate_id"] != id) {
      throw Error(ErrorCode::kInvalidRequest, "candidate_id in body does not match the path");
    }
    body["candidate_id"] = id;
    auto d = ReviewDecision::from_json(body);
    if (d.annotator.empty()) d.annotator = self->options.default_annotator;
    std::optional<CandidateStatus> expected;
    if (body.contains("expected_status") && !body["expected_status"].is_null()) {
      try {
        expected = graphgen::candidate_status_from_string(body["expected_status"].get<std::string>());
      } catch (const Error& e) {
        throw Error(ErrorCode::kInvalidRequest, e.what());
      }
    }
    auto r = self->store.decide(d, expected);
    send_json(res, 200, {{"id", id}, {"status", graphgen::to_string(r.status)}, {"changed", r.changed}});
  }));

  s.Get("/stats", guarded([self](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, self->store.stats().to_json());
  }));

  if (impl_->options.static_dir) {
    if (!s.set_mount_point("/", impl_->options.static_dir->string())) {
      throw Error(ErrorCode::kIo, "static directory not found: " + impl_->options.static_dir->string());
    }
  }
}

ReviewServer::~ReviewServer() { stop(); }

int ReviewServer::bind() {
  auto& o = impl_->options;
  if (o.port == 0) {
    impl_->port = impl_->server.bind_to_any_port(o.host);
  } else {
    impl_->port = impl_->server.bind_to_port(o.host, o.port) ? o.port : -1;
  }
  if (impl_->port < 0) {
    throw Error(ErrorCode::kIo, "cannot bind " + o.host + ":" + std::to_string(o.port));
  }
  return impl_->port;
}

void ReviewServer::listen() {
  if (impl_->port < 0) bind();
  impl_->server.listen_after_bind();
}

void ReviewServer::stop() {
  if (impl_) impl_->server.stop();
}

bool ReviewServer::running() const { return impl_->server.is_running(); }

}  // namespace claimgate::review
