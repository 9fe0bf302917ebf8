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

#include "claimgate/llm/chat.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "claimgate/common/error.hpp"

namespace claimgate::llm {

Json ModelHandle::to_json() const {
  return {{"provider", provider},
          {"model", model},
          {"temperature", temperature},
          {"max_output_tokens", max_output_tokens},
          {"thinking", thinking}};
}

ModelHandle ModelHandle::from_json(const Json& j) {
  ModelHandle h;
  h.provider = j.at("provider").get<std::string>();
  h.model = j.at("model").get<std::string>();
  h.temperature = j.value("temperature", 0.0);
  h.max_output_tokens = j.value("max_output_tokens", 4096);
  h.thinking = j.value("thinking", false);
  return h;
}

std::string ModelHandle::label() const {
  std::ostringstream out;
  out << provider << "/" << model << "@" << temperature;
  return out.str();
}

const char* to_string(Role r) {
  switch (r) {
    case Role::kSystem: return "system";
    case Role::kUser: return "user";
    case Role::kAssistant: return "assistant";
  }
  return "user";
}

void ChatRequest::validate() const {
  if (messages.empty()) throw Error(ErrorCode::kInvalidRequest, "request has no messages");
  for (std::size_t i = 0; i < messages.size(); ++i) {
    if (messages[i].role == Role::kSystem && i != 0) {
      throw Error(ErrorCode::kInvalidRequest,
                  "system message must be first and appear at most once");
    }
  }
  if (handle.temperature < 0) {
    throw Error(ErrorCode::kInvalidRequest, "temperature must be >= 0");
  }
}

namespace {

std::string mime_for(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".gif") return "image/gif";
  if (ext == ".webp") return "image/webp";
  return "application/octet-stream";
}

}  // namespace

PreparedRequest PreparedRequest::prepare(const ChatRequest& request) {
  request.validate();
  PreparedRequest out;
  out.request = &request;
  for (const auto& m : request.messages) {
    if (!m.image) {
      out.attachments.emplace_back();
      continue;
    }
    std::ifstream in(*m.image, std::ios::binary);
    if (!in) {
      throw Error(ErrorCode::kAttachmentUnreadable, "cannot read image " + m.image->string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    Attachment a{mime_for(*m.image), buf.str(), {}};
    a.sha256 = sha256_hex(a.bytes);
    out.attachments.push_back(std::move(a));
  }
  return out;
}

std::string PreparedRequest::joined_text() const {
  std::string out;
  for (const auto& m : request->messages) {
    if (!out.empty()) out += '\n';
    out += m.text;
  }
  return out;
}

ProviderFailure ProviderFailure::from_status(int status, const std::string& message) {
  Kind kind = Kind::kPermanent;
  if (status == 401 || status == 403) {
    kind = Kind::kAuth;
  } else if (status == 429) {
    kind = Kind::kRateLimited;
  } else if (status == 0 || status == 408 || status >= 500) {
    kind = Kind::kTransient;
  }
  return ProviderFailure(kind, status, message);
}

}  // namespace claimgate::llm
