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

#include "iosynth/executor.hpp"

#include <algorithm>

#include "iosynth/host.hpp"
#include "iosynth/record.hpp"

namespace iosynth {

void ExecLimits::validate() const {
  if (timeout_ms < 1) throw std::invalid_argument("timeoutMs must be >= 1");
  if (max_output_bytes < 1024) throw std::invalid_argument("maxOutputBytes must be >= 1024");
}

const char* status_name(ExecStatus s) {
  switch (s) {
    case ExecStatus::Ok: return "ok";
    case ExecStatus::Error: return "error";
    case ExecStatus::Timeout: return "timeout";
    case ExecStatus::ProtocolError: return "protocolError";
  }
  return "?";
}

std::optional<ExecStatus> status_from_name(std::string_view name) {
  for (ExecStatus s : {ExecStatus::Ok, ExecStatus::Error, ExecStatus::Timeout,
                       ExecStatus::ProtocolError}) {
    if (name == status_name(s)) return s;
  }
  return std::nullopt;
}

bool HealthInfo::supports(std::string_view op) const {
  return std::find(ops.begin(), ops.end(), op) != ops.end();
}

bool compare_outcomes(const Outcome& a, const Outcome& b) {
  if (a.is_ok() != b.is_ok()) return false;
  if (a.is_err()) return a.error_kind() == b.error_kind();
  return host::eq_reflexive(a.value(), b.value());
}

const char* op_name(ExecOp op) {
  switch (op) {
    case ExecOp::Call: return "call";
    case ExecOp::Compare: return "compare";
    case ExecOp::Transform: return "transform";
    case ExecOp::Health: return "health";
  }
  return "?";
}

namespace {

ExecOp op_from_name(std::string_view name) {
  for (ExecOp op : {ExecOp::Call, ExecOp::Compare, ExecOp::Transform, ExecOp::Health}) {
    if (name == op_name(op)) return op;
  }
  throw FrameError("unknown op '" + std::string(name) + "'");
}

Value limits_to_value(const ExecLimits& l) {
  return RecordBuilder()
      .add("timeoutMs", rec::i64(l.timeout_ms))
      .add("maxOutputBytes", rec::i64(l.max_output_bytes))
      .add("maxRecursionHint", rec::i64(l.max_recursion_hint))
      .build();
}

ExecLimits limits_from_value(const RecordReader& r) {
  ExecLimits l;
  l.timeout_ms = r.i64_or("timeoutMs", l.timeout_ms);
  l.max_output_bytes = r.i64_or("maxOutputBytes", l.max_output_bytes);
  l.max_recursion_hint = r.i64_or("maxRecursionHint", l.max_recursion_hint);
  return l;
}

template <typename F>
auto frame_guard(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const RecordError& e) {
    throw FrameError(e.what());
  } catch (const DecodeError& e) {
    throw FrameError(e.what());
  } catch (const std::invalid_argument& e) {
    throw FrameError(e.what());
  }
}

}  // namespace

std::string encode_request(const ExecRequest& r) {
  RecordBuilder b;
  b.add("id", rec::i64(r.id)).add("op", Value::str(op_name(r.op)));
  switch (r.op) {
    case ExecOp::Call:
      b.add("source", Value::str(r.source))
          .add("entry", Value::str(r.entry))
          .add("args", r.args.as_tuple())
          .add("limits", limits_to_value(r.limits));
      break;
    case ExecOp::Compare:
      if (!r.pair) throw std::invalid_argument("compare request without pair");
      b.add("pair", Value::tuple({outcome_to_value(r.pair->first), outcome_to_value(r.pair->second)}));
      break;
    case ExecOp::Transform:
      b.add("source", Value::str(r.source))
          .add("entry", Value::str(r.entry))
          .add("transformKind", Value::str(r.transform_kind));
      break;
    case ExecOp::Health:
      break;
  }
  return encode(b.build());
}

ExecRequest decode_request(std::string_view line) {
  return frame_guard([&] {
    const Value v = decode(line);
    RecordReader rd(v, "request");
    ExecRequest r;
    r.id = rd.i64("id");
    r.op = op_from_name(rd.str("op"));
    switch (r.op) {
      case ExecOp::Call:
        r.source = rd.str("source");
        r.entry = rd.str("entry");
        r.args = ArgTuple::from_tuple(rd.kind("args", Value::Kind::Tuple));
        if (const Value* l = rd.find("limits")) r.limits = limits_from_value(RecordReader(*l, "limits"));
        break;
      case ExecOp::Compare: {
        const Value& p = rd.kind("pair", Value::Kind::Tuple);
        if (p.items().size() != 2) throw FrameError("pair must have two outcomes");
        r.pair = std::make_pair(outcome_from_value(p.items()[0]), outcome_from_value(p.items()[1]));
        break;
      }
      case ExecOp::Transform:
        r.source = rd.str("source");
        r.entry = rd.str("entry");
        r.transform_kind = rd.str("transformKind");
        break;
      case ExecOp::Health:
        break;
    }
    return r;
  });
}

std::string encode_response(const ExecResponse& r) {
  RecordBuilder b;
  b.add("id", rec::i64(r.id)).add("status", Value::str(status_name(r.status)));
  if (r.outcome) b.add("outcome", outcome_to_value(*r.outcome));
  if (r.equal) b.add("equal", Value::boolean(*r.equal));
  if (r.source) b.add("source", Value::str(*r.source));
  if (!r.message.empty()) b.add("message", Value::str(r.message));
  if (r.health) {
    ValueList ops;
    for (const auto& op : r.health->ops) ops.push_back(Value::str(op));
    b.add("version", Value::str(r.health->version)).add("ops", Value::list(std::move(ops)));
  }
  return encode(b.build());
}

ExecResponse decode_response(std::string_view line) {
  return frame_guard([&] {
    const Value v = decode(line);
    RecordReader rd(v, "response");
    ExecResponse r;
    r.id = rd.i64("id");
    const auto status = status_from_name(rd.str("status"));
    if (!status) throw FrameError("unknown status");
    r.status = *status;
    if (const Value* o = rd.find("outcome")) r.outcome = outcome_from_value(*o);
    if (const Value* e = rd.find("equal")) {
      if (!e->is(Value::Kind::Bool)) throw FrameError("equal must be a bool");
      r.equal = e->as_bool();
    }
    if (rd.find("source")) r.source = rd.str("source");
    r.message = rd.str_or("message", "");
    if (rd.find("version")) {
      HealthInfo h;
      h.version = rd.str("version");
      for (const auto& op : rd.kind("ops", Value::Kind::List).items()) {
        if (!op.is(Value::Kind::Str)) throw FrameError("ops must be strings");
        h.ops.push_back(op.as_str());
      }
      r.health = std::move(h);
    }
    if (r.status == ExecStatus::Timeout && r.outcome) throw FrameError("timeout carries an outcome");
    return r;
  });
}

std::string serve_frame(Executor& exec, std::string_view line) {
  ExecResponse resp;
  ExecRequest req;
  try {
    req = decode_request(line);
  } catch (const FrameError& e) {
    // Echo the id when it is readable.
    try {
      const Value v = decode(line);
      if (const Value* id = v.is(Value::Kind::Map) ? v.field("id") : nullptr) {
        if (id->is(Value::Kind::Int) && id->as_int().fits_int64()) resp.id = id->as_int().as_int64();
      }
    } catch (const DecodeError&) {
    }
    resp.status = ExecStatus::ProtocolError;
    resp.message = std::string("malformed frame: ") + e.what();
    return encode_response(resp);
  }
  resp.id = req.id;
  switch (req.op) {
    case ExecOp::Call: {
      try {
        req.limits.validate();
      } catch (const std::invalid_argument& e) {
        resp.status = ExecStatus::ProtocolError;
        resp.message = e.what();
        break;
      }
      CallResult cr = exec.call(req.source, req.entry, req.args, req.limits);
      resp.status = cr.status;
      if (cr.status == ExecStatus::Ok) resp.outcome = cr.outcome;
      resp.message = cr.diagnostic;
      break;
    }
    case ExecOp::Compare:
      resp.equal = exec.compare(req.pair->first, req.pair->second);
      break;
    case ExecOp::Transform: {
      TransformResult tr = exec.transform(req.source, req.transform_kind, req.entry);
      resp.status = tr.status;
      if (tr.status == ExecStatus::Ok) resp.source = tr.source;
      resp.message = tr.diagnostic;
      break;
    }
    case ExecOp::Health:
      resp.health = exec.health();
      break;
  }
  return encode_response(resp);
}

}  // namespace iosynth
