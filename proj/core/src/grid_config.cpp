// Copyright 2026 The lingrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include <fmt/format.h>

#include "lingrid/gridsim.hpp"

namespace lingrid {

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument(fmt::format("not a number: '{}'", text));
  }
  return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::set<std::string> split_list(std::string_view text) {
  std::set<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    if (end > start) out.emplace(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (!text.empty() && text.front() == '-') return -parse_rational(text.substr(1));
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument(fmt::format("zero denominator in '{}'", text));
    return Rational{parse_int(text.substr(0, slash)), den};
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 12 || frac.front() == '-') {
      throw std::invalid_argument(fmt::format("bad decimal '{}'", text));
    }
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const auto int_part = whole.empty() ? 0 : parse_int(whole);
    if (int_part < 0) throw std::invalid_argument(fmt::format("bad decimal '{}'", text));
    return Rational{int_part * scale + parse_int(frac), scale};
  }
  return Rational{parse_int(text)};
}

std::string format_rational(const Rational& value) {
  if (value.denominator() == 1) return fmt::format("{}", value.numerator());
  return fmt::format("{}/{}", value.numerator(), value.denominator());
}

std::string_view to_string(GridErrc code) {
  switch (code) {
    case GridErrc::AccessDenied: return "ACCESS_DENIED";
    case GridErrc::NoResource: return "NO_RESOURCE";
    case GridErrc::RegulationViolation: return "REGULATION_VIOLATION";
    case GridErrc::Placement: return "PLACEMENT_ERROR";
    case GridErrc::Config: return "CONFIG_ERROR";
  }
  return "UNKNOWN";
}

GridError::GridError(GridErrc code, const std::string& message)
    : std::runtime_error(fmt::format("{}: {}", to_string(code), message)), code_(code) {}

GridConfig parse_grid_config(std::istream& in) {
  GridConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  bool bandwidth_seen = false;
  std::set<std::string> node_ids;

  auto fail = [&](const std::string& msg) {
    throw GridError(GridErrc::Config, fmt::format("line {}: {}", line_no, msg));
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view{line};
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    const auto words = split_ws(view);
    if (words.empty()) continue;
    const auto keyword = words[0];
    try {
      if (keyword == "vo") {
        if (words.size() < 2 || words.size() > 3) fail("expected `vo <name> [members=a,b]`");
        VirtualOrg vo{std::string(words[1]), {}};
        if (words.size() == 3) {
          if (words[2].substr(0, 8) != "members=") fail("expected members=<list>");
          vo.members = split_list(words[2].substr(8));
        }
        for (const auto& existing : cfg.policy.vos) {
          if (existing.name == vo.name) fail(fmt::format("duplicate vo '{}'", vo.name));
        }
        cfg.policy.vos.push_back(std::move(vo));
      } else if (keyword == "node") {
        if (words.size() < 2) fail("expected `node <id> power=<r> storage=<bytes> vos=<list>`");
        NodeState node;
        node.node_id = std::string(words[1]);
        bool has_power = false;
        bool has_storage = false;
        for (std::size_t i = 2; i < words.size(); ++i) {
          const auto eq = words[i].find('=');
          if (eq == std::string_view::npos) fail(fmt::format("expected key=value, got '{}'", words[i]));
          const auto key = words[i].substr(0, eq);
          const auto value = words[i].substr(eq + 1);
          if (key == "power") {
            node.power = parse_rational(value);
            if (node.power <= 0) fail("power must be positive");
            has_power = true;
          } else if (key == "storage") {
            const auto bytes = parse_int(value);
            if (bytes < 0) fail("storage must be non-negative");
            node.storage_capacity = static_cast<std::uint64_t>(bytes);
            has_storage = true;
          } else if (key == "vos") {
            node.supported_vos = split_list(value);
          } else {
            fail(fmt::format("unknown node attribute '{}'", key));
          }
        }
        if (!has_power || !has_storage) fail("node needs power= and storage=");
        if (!node_ids.insert(node.node_id).second) {
          fail(fmt::format("duplicate node '{}'", node.node_id));
        }
        cfg.nodes.push_back(std::move(node));
      } else if (keyword == "bandwidth") {
        if (words.size() != 2) fail("expected `bandwidth <bytes/s>`");
        cfg.policy.bandwidth = parse_rational(words[1]);
        if (cfg.policy.bandwidth <= 0) fail("bandwidth must be positive");
        bandwidth_seen = true;
      } else if (keyword == "fail") {
        if (words.size() != 4) fail("expected `fail <node> <t_down> <t_up>`");
        FailureEvent ev{std::string(words[1]), parse_rational(words[2]), std::nullopt};
        if (words[3] != "inf") ev.up = parse_rational(words[3]);
        if (ev.down < 0) fail("failure time must be non-negative");
        if (ev.up && *ev.up <= ev.down) fail("t_up must be after t_down");
        cfg.failures.push_back(std::move(ev));
      } else if (keyword == "cert") {
        if (words.size() < 3 || words.size() > 4) fail("expected `cert <user> <vo> [invalid]`");
        Certificate cert{std::string(words[1]), std::string(words[2]), true};
        if (words.size() == 4) {
          if (words[3] != "invalid") fail("only `invalid` may follow the VO");
          cert.valid = false;
        }
        cfg.certificate = std::move(cert);
      } else {
        fail(fmt::format("unknown directive '{}'", keyword));
      }
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  auto vo_known = [&](const std::string& name) {
    for (const auto& vo : cfg.policy.vos) {
      if (vo.name == name) return true;
    }
    return false;
  };
  for (const auto& node : cfg.nodes) {
    for (const auto& vo : node.supported_vos) {
      if (!vo_known(vo)) {
        throw GridError(GridErrc::Config,
                        fmt::format("node '{}' references unknown vo '{}'", node.node_id, vo));
      }
    }
  }
  for (const auto& f : cfg.failures) {
    if (!node_ids.count(f.node_id)) {
      throw GridError(GridErrc::Config, fmt::format("fail references unknown node '{}'", f.node_id));
    }
  }
  if (cfg.certificate && !vo_known(cfg.certificate->vo)) {
    throw GridError(GridErrc::Config,
                    fmt::format("cert references unknown vo '{}'", cfg.certificate->vo));
  }
  if (!bandwidth_seen) cfg.policy.bandwidth = Rational{1};
  return cfg;
}

GridConfig parse_grid_config(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_grid_config(in);
}

GridConfig load_grid_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GridError(GridErrc::Config, fmt::format("cannot open grid config '{}'", path));
  return parse_grid_config(in);
}

}  // namespace lingrid
