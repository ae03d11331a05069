#pragma once

// Generator of malformed TUM lines. Every produced line is guaranteed to be
// invalid (wrong arity, non-numeric or non-finite token, or a zero-norm
// quaternion) so the parser must reject it.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fuzz {

inline std::vector<std::string> valid_fields(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  std::vector<std::string> f;
  for (int k = 0; k < 8; ++k) f.push_back(std::to_string(u(gen)));
  return f;
}

inline std::string join(const std::vector<std::string>& f, const std::string& sep = " ") {
  std::string s;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (k) s += sep;
    s += f[k];
  }
  return s;
}

inline std::string malformed_line(std::mt19937_64& gen) {
  static const std::vector<std::string> kBadTokens = {
      "nan", "NaN", "inf", "-inf", "1e999", "-1e400", "abc", "--1", "1.2.3", "0x1p3",
      "+-3", "1,5", "\xff\xfe", "1e", ".", "-", "true", "\"0\"", "1_000", "٣"};
  static const std::string kJunk = "xZ@!,;:'\"\\\x01\x7f\xc3\xa9";
  std::vector<std::string> f = valid_fields(gen);
  std::uniform_int_distribution<int> kind(0, 5);
  std::uniform_int_distribution<int> field(0, 7);
  switch (kind(gen)) {
    case 0: {  // too few fields (at least one, so the line is not blank)
      std::uniform_int_distribution<int> keep(1, 7);
      f.resize(static_cast<std::size_t>(keep(gen)));
      break;
    }
    case 1: {  // too many fields
      std::uniform_int_distribution<int> extra(1, 5);
      for (int k = extra(gen); k > 0; --k) f.push_back("0.5");
      break;
    }
    case 2: {  // bad token
      std::uniform_int_distribution<std::size_t> pick(0, kBadTokens.size() - 1);
      f[static_cast<std::size_t>(field(gen))] = kBadTokens[pick(gen)];
      break;
    }
    case 3: {  // junk byte inside a token (never at the very start of the line)
      const auto k = static_cast<std::size_t>(field(gen));
      std::uniform_int_distribution<std::size_t> pos(1, f[k].size());
      std::uniform_int_distribution<std::size_t> pick(0, kJunk.size() - 1);
      f[k].insert(pos(gen), 1, kJunk[pick(gen)]);
      break;
    }
    case 4: {  // zero quaternion
      for (int k = 4; k < 8; ++k) f[static_cast<std::size_t>(k)] = "0";
      break;
    }
    default: {  // comma-separated instead of whitespace
      return join(f, ",");
    }
  }
  std::uniform_int_distribution<int> sep(0, 2);
  return join(f, sep(gen) == 0 ? "\t" : " ");
}

}  // namespace fuzz
