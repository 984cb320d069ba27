// Copyright 2026 The btverify Authors
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

#include "btverify/bus.hpp"

#include <utility>

#include "btverify/errors.hpp"

namespace btverify {

std::string_view to_string(Direction d) {
  return d == Direction::Request ? "request" : "reply";
}

ConnectionId ConnectionId::from_string(const std::string& s) {
  const size_t pos = s.find("->");
  if (pos == std::string::npos || pos == 0 || pos + 2 >= s.size()) {
    throw ParseError("bad connection id '" + s + "', expected 'client->server'");
  }
  return ConnectionId{s.substr(0, pos), s.substr(pos + 2)};
}

void Bus::register_endpoint(const std::string& name, RequestHandler handler) {
  std::lock_guard lock(registry_mutex_);
  if (!endpoints_.emplace(name, std::move(handler)).second) {
    throw ProtocolError("endpoint '" + name + "' is already registered");
  }
}

void Bus::unregister_endpoint(const std::string& name) {
  std::lock_guard lock(registry_mutex_);
  if (endpoints_.erase(name) == 0) {
    throw WiringError("cannot unregister unknown endpoint '" + name + "'");
  }
}

bool Bus::has_endpoint(const std::string& name) const {
  std::lock_guard lock(registry_mutex_);
  return endpoints_.count(name) != 0;
}

Bus::ConnectionState& Bus::connection_state(const ConnectionId& id) {
  std::lock_guard lock(registry_mutex_);
  auto& slot = connections_[id];
  if (slot == nullptr) {
    slot = std::make_unique<ConnectionState>();
  }
  return *slot;
}

void Bus::emit(ConnectionState& state, const Message& m) {
  for (const Hook& hook : state.hooks) {
    hook.sink(m);
  }
  std::vector<Hook> taps;
  {
    std::lock_guard lock(taps_mutex_);
    taps = taps_;
  }
  for (const Hook& tap : taps) {
    tap.sink(m);
  }
}

Payload Bus::query(const std::string& from, const std::string& to,
                   const std::string& procedure, const Payload& args) {
  RequestHandler handler;
  {
    std::lock_guard lock(registry_mutex_);
    auto it = endpoints_.find(to);
    if (it == endpoints_.end()) {
      throw WiringError("query from '" + from + "': unknown endpoint '" + to + "'");
    }
    handler = it->second;
  }

  const ConnectionId connection{from, to};
  ConnectionState& state = connection_state(connection);

  // The connection is held for the whole exchange: requests and replies
  // alternate with matching seq, and hooks observe that total order.
  std::lock_guard conn_lock(state.mutex);
  const std::uint64_t seq = state.next_seq++;
  const double now = time_.load();

  Message request{connection, Direction::Request, procedure, args, seq, false, now};
  emit(state, request);

  Payload reply_payload;
  try {
    reply_payload = handler(QueryContext{from, procedure}, args);
  } catch (const std::exception& e) {
    Message fault{connection, Direction::Reply, procedure,
                  Payload{{"error", std::string(e.what())}}, seq, true, now};
    emit(state, fault);
    throw QueryError("query " + connection.str() + " " + procedure +
                     " faulted: " + e.what());
  }

  Message reply{connection, Direction::Reply, procedure, reply_payload, seq, false,
                now};
  emit(state, reply);
  return reply_payload;
}

HookId Bus::attach_portmonitor(const ConnectionId& connection, MessageSink sink) {
  ConnectionState& state = connection_state(connection);
  const HookId id = next_hook_id_.fetch_add(1);
  std::lock_guard lock(state.mutex);
  state.hooks.push_back(Hook{id, std::move(sink)});
  return id;
}

void Bus::detach(HookId id) {
  {
    std::lock_guard registry_lock(registry_mutex_);
    for (auto& [conn, state] : connections_) {
      std::lock_guard conn_lock(state->mutex);
      auto& hooks = state->hooks;
      for (auto it = hooks.begin(); it != hooks.end(); ++it) {
        if (it->id == id) {
          hooks.erase(it);
          return;
        }
      }
    }
  }
  {
    std::lock_guard taps_lock(taps_mutex_);
    for (auto it = taps_.begin(); it != taps_.end(); ++it) {
      if (it->id == id) {
        taps_.erase(it);
        return;
      }
    }
  }
  throw WiringError("detach: unknown hook id " + std::to_string(id));
}

HookId Bus::attach_tap(MessageSink sink) {
  const HookId id = next_hook_id_.fetch_add(1);
  std::lock_guard lock(taps_mutex_);
  taps_.push_back(Hook{id, std::move(sink)});
  return id;
}

}  // namespace btverify
