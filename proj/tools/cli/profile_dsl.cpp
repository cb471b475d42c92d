#include "profile_dsl.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace multimono::cli {

namespace {

using Pairs = std::vector<std::pair<std::string, std::string>>;

Pairs split_pairs(const std::string& body, const std::string& family) {
  Pairs out;
  std::size_t pos = 0;
  while (pos <= body.size() && !body.empty()) {
    const std::size_t comma = body.find(',', pos);
    const std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw DslError(family + ": expected key=value, got '" + item + "'");
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

int parse_int(const std::string& text, const std::string& what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw DslError(what + ": expected an integer, got '" + text + "'");
  return v;
}

DiscreteMeasure parse_atoms(const std::string& text) {
  std::vector<DiscreteMeasure::Atom> atoms;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find_first_of(";/", pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    const std::size_t at = item.find('@');
    if (at == std::string::npos) {
      atoms.push_back({parse_number(item, "williamson atom"), 1.0});
    } else {
      atoms.push_back({parse_number(item.substr(0, at), "williamson atom"),
                       parse_number(item.substr(at + 1), "williamson weight")});
    }
    pos = end + 1;
  }
  if (atoms.empty()) throw DslError("williamson: atoms is empty");
  return DiscreteMeasure(std::move(atoms));
}

bool is_modifier(const std::string& key) {
  return key == "pow" || key == "scale" || key == "cutoff" || key == "part";
}

Profile apply_modifier(const Profile& f, const std::string& key, const std::string& value) {
  if (key == "pow") return profiles::compose_power(f, parse_number(value, "pow"));
  if (key == "scale") return profiles::scale_argument(f, parse_number(value, "scale"));
  if (key == "cutoff") return profiles::with_cutoff(f, parse_number(value, "cutoff"));
  if (value == "re") return profiles::real_part(f);
  if (value == "im") return profiles::imag_part(f);
  throw DslError("part: expected re or im, got '" + value + "'");
}

}  // namespace

double parse_number(const std::string& text, const std::string& what) {
  if (text == "inf" || text == "+inf" || text == "Inf") return kInf;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw DslError(what + ": expected a number, got '" + text + "'");
  return v;
}

Profile parse_profile(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string family = text.substr(0, colon);
  const std::string body = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  if (family == "csv") {
    if (body.empty()) throw DslError("csv: missing path");
    return profiles::load_csv(body);
  }

  std::map<std::string, std::string> params;
  Pairs modifiers;
  for (auto& [k, v] : split_pairs(body, family)) {
    if (is_modifier(k)) {
      modifiers.emplace_back(k, v);
    } else if (!modifiers.empty()) {
      throw DslError(family + ": parameter '" + k + "' after a modifier");
    } else if (!params.emplace(k, v).second) {
      throw DslError(family + ": duplicate parameter '" + k + "'");
    }
  }
  auto take = [&](const std::string& key, std::optional<double> fallback) {
    const auto it = params.find(key);
    if (it == params.end()) {
      if (!fallback) throw DslError(family + ": missing parameter '" + key + "'");
      return *fallback;
    }
    const double v = parse_number(it->second, family + "." + key);
    params.erase(it);
    return v;
  };
  auto take_int = [&](const std::string& key) {
    const auto it = params.find(key);
    if (it == params.end()) throw DslError(family + ": missing parameter '" + key + "'");
    const int v = parse_int(it->second, family + "." + key);
    params.erase(it);
    return v;
  };

  std::optional<Profile> base;
  if (family == "exp") {
    base = profiles::exp_decay(take("l", 1.0));
  } else if (family == "gauss") {
    base = profiles::gaussian(take("s", 1.0));
  } else if (family == "example1") {
    const double g = take("g", 0.0), a = take("a", std::nullopt), b = take("b", std::nullopt);
    base = profiles::example1(g, a, b);
  } else if (family == "example2") {
    const double a = take("a", std::nullopt), b = take("b", std::nullopt);
    base = profiles::example2(a, b);
  } else if (family == "trunc") {
    const int m = take_int("m");
    base = profiles::trunc_power(m, take("u", 1.0));
  } else if (family == "williamson") {
    const int m = take_int("m");
    const auto it = params.find("atoms");
    if (it == params.end()) throw DslError("williamson: missing parameter 'atoms'");
    const auto mu = parse_atoms(it->second);
    params.erase(it);
    base = profiles::williamson_synthesize(mu, m);
  } else {
    throw DslError("unknown profile family '" + family + "'");
  }
  if (!params.empty()) throw DslError(family + ": unknown parameter '" + params.begin()->first + "'");

  Profile f = *base;
  for (const auto& [k, v] : modifiers) f = apply_modifier(f, k, v);
  return f;
}

}  // namespace multimono::cli
