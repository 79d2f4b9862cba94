#ifndef WINTERLAT_RUNSPEC_HPP
#define WINTERLAT_RUNSPEC_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "winterlat/lattice.hpp"
#include "winterlat/rational.hpp"

namespace winterlat {

/// A model block, a command and that command's options, all from one "key = value" file.
struct RunSpec {
  std::optional<Model> model;
  std::string command;
  std::map<std::string, std::string> options;

  bool has(const std::string& k) const { return options.count(k) > 0; }
  std::string get(const std::string& k, const std::string& fallback = "") const
  {
    auto it = options.find(k);
    return it == options.end() ? fallback : it->second;
  }
};

inline const std::vector<std::string>& run_commands()
{
  static const std::vector<std::string> cmds{"classify", "minimize", "wetting-check", "shape", "converge", "verify"};
  return cmds;
}

/// Option keys accepted by each command (besides the model keys and "command").
inline std::vector<std::string> command_options(const std::string& command)
{
  if (command == "classify") return {};
  if (command == "minimize") return {"n", "method", "seed", "steps", "restarts", "jobs", "out", "svg"};
  if (command == "wetting-check") return {"c-s-grid", "max-n"};
  if (command == "shape") return {"sigma", "svg", "csv"};
  if (command == "converge") return {"n-list", "seed", "seeds", "steps", "jobs", "csv", "svg-overlay"};
  if (command == "verify") return {"max-n", "rule", "csv"};
  throw Error(ErrorKind::Parse, "unknown command '" + command + "'");
}

inline RunSpec parse_run_spec(const std::string& text)
{
  const auto kvs = parse_key_values(text);
  RunSpec spec;
  int command_line = 0;
  for (const auto& kv : kvs)
    if (kv.key == "command") {
      spec.command = kv.value;
      command_line = kv.line;
    }
  if (spec.command.empty()) throw Error(ErrorKind::Parse, "missing key 'command'");
  std::vector<std::string> allowed;
  try {
    allowed = command_options(spec.command);
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(command_line) + ": " + e.what());
  }
  bool any_model = false;
  for (const auto& kv : kvs) {
    if (kv.key == "command") continue;
    if (is_model_key(kv.key)) {
      any_model = true;
      continue;
    }
    if (std::find(allowed.begin(), allowed.end(), kv.key) == allowed.end())
      throw Error(ErrorKind::Parse, "line " + std::to_string(kv.line) + ": unknown key '" + kv.key + "' for command '" +
                                        spec.command + "'");
    spec.options[kv.key] = kv.value;
  }
  if (any_model) spec.model = model_from_key_values(kvs);
  return spec;
}

/// "lo:step:hi" (inclusive) or a comma list of rationals.
inline std::vector<Rational> parse_rational_list(const std::string& s)
{
  std::vector<Rational> out;
  if (s.find(':') != std::string::npos) {
    const auto a = s.find(':'), b = s.find(':', a + 1);
    if (b == std::string::npos) throw Error(ErrorKind::Parse, "grid must be 'lo:step:hi', got '" + s + "'");
    const Rational lo = parse_rational(s.substr(0, a)), step = parse_rational(s.substr(a + 1, b - a - 1)),
                   hi = parse_rational(s.substr(b + 1));
    if (step <= 0) throw Error(ErrorKind::Parse, "grid step must be positive in '" + s + "'");
    if (hi < lo) throw Error(ErrorKind::Parse, "grid upper end below lower end in '" + s + "'");
    if ((hi - lo) / step > 100000) throw Error(ErrorKind::Parse, "grid too long: '" + s + "'");
    for (Rational x = lo; x <= hi; x += step) out.push_back(x);
    return out;
  }
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_rational(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::vector<int> parse_int_list(const std::string& s)
{
  std::vector<int> out;
  for (const auto& r : parse_rational_list(s)) {
    if (r.denominator() != 1) throw Error(ErrorKind::Parse, "expected integers in '" + s + "'");
    out.push_back(static_cast<int>(r.numerator()));
  }
  return out;
}

}  // namespace winterlat

#endif  // WINTERLAT_RUNSPEC_HPP
