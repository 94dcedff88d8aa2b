#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "iib/channel.hpp"
#include "iib/dist.hpp"
#include "iib/soft.hpp"

namespace iib {

using nlohmann::json;

inline constexpr int kChannelFileSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

inline std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidFile("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline json scalar_to_json(double v) { return json(v); }
inline json scalar_to_json(const Rational& v) { return json(format_rational(v)); }

template <typename S>
S scalar_from_json(const json& v) {
  if constexpr (scalar_traits<S>::is_exact) {
    if (!v.is_string()) throw InvalidFile("exact mode entries must be \"num/den\" strings");
    return parse_rational(v.get<std::string>());
  } else {
    if (!v.is_number()) throw InvalidFile("float mode entries must be numbers");
    return v.get<double>();
  }
}

// Channel matrices are stored output-major: row y is
// [p(y|x=0), p(y|x=1), ...].
template <typename S>
json matrix_to_json(const MatX<S>& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename S>
MatX<S> matrix_from_json(const json& rows, Index nr, Index nc, const char* what) {
  if (!rows.is_array() || static_cast<Index>(rows.size()) != nr)
    throw InvalidFile(std::string(what) + ": expected " + std::to_string(nr) + " rows");
  MatX<S> m(nr, nc);
  for (Index r = 0; r < nr; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != nc)
      throw InvalidFile(std::string(what) + ": bad row length");
    for (Index c = 0; c < nc; ++c)
      m(r, c) = scalar_from_json<S>(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

template <typename S>
json vector_to_json(const VecX<S>& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(scalar_to_json(v(i)));
  return out;
}

inline std::optional<std::vector<std::string>> labels_from_json(const json& j, const char* key,
                                                                Index size) {
  if (!j.contains(key)) return std::nullopt;
  const json& arr = j.at(key);
  if (!arr.is_array() || static_cast<Index>(arr.size()) != size)
    throw InvalidFile(std::string(key) + " does not match the alphabet size");
  std::vector<std::string> out;
  for (const auto& v : arr) out.push_back(v.get<std::string>());
  return out;
}

template <typename S>
Alphabet alphabet_from(const json& j, const char* labels_key, Index size) {
  if (auto ls = labels_from_json(j, labels_key, size)) return Alphabet::with_labels(*ls);
  return Alphabet::of_size(size);
}

}  // namespace detail

// Self-describing channel file: p(Y|X), optional p(X), optional labels. Exact
// entries are "num/den" strings so values survive the round trip unchanged.
struct ChannelFileData {
  int schema_version = kChannelFileSchemaVersion;
  bool exact = false;
  std::variant<Channel<double>, Channel<Rational>> channel;
  std::optional<std::variant<Dist<double>, Dist<Rational>>> p_x;

  const Channel<double>& as_float_channel() const { return std::get<Channel<double>>(channel); }
  const Channel<Rational>& as_exact_channel() const { return std::get<Channel<Rational>>(channel); }
};

template <typename S>
json channel_to_json(const Channel<S>& ch, const Dist<S>* px = nullptr) {
  json out;
  out["schema_version"] = kChannelFileSchemaVersion;
  out["mode"] = scalar_traits<S>::mode_name();
  out["x_size"] = ch.input().size;
  out["y_size"] = ch.output().size;
  out["p_y_given_x"] = detail::matrix_to_json(ch.matrix());
  if (px) out["p_x"] = detail::vector_to_json(px->mass());
  if (!ch.input().labels.empty()) out["x_labels"] = ch.input().labels;
  if (!ch.output().labels.empty()) out["y_labels"] = ch.output().labels;
  return out;
}

inline ChannelFileData channel_from_json(const json& j) {
  try {
    if (!j.is_object()) throw InvalidFile("channel file must be a JSON object");
    if (j.at("schema_version").get<int>() != kChannelFileSchemaVersion)
      throw InvalidFile("unsupported channel file schema_version");
    const std::string mode = j.at("mode").get<std::string>();
    const Index nx = j.at("x_size").get<Index>();
    const Index ny = j.at("y_size").get<Index>();
    if (nx < 1 || ny < 1) throw InvalidFile("alphabet sizes must be >= 1");

    ChannelFileData data;
    data.exact = mode == "exact";
    if (!data.exact && mode != "float") throw InvalidFile("mode must be \"exact\" or \"float\"");

    auto build = [&](auto tag) {
      using S = decltype(tag);
      Alphabet ax = detail::alphabet_from<S>(j, "x_labels", nx);
      Alphabet ay = detail::alphabet_from<S>(j, "y_labels", ny);
      MatX<S> m = detail::matrix_from_json<S>(j.at("p_y_given_x"), ny, nx, "p_y_given_x");
      data.channel = Channel<S>::from_matrix(ax, ay, std::move(m));
      if (j.contains("p_x")) {
        const json& arr = j.at("p_x");
        if (!arr.is_array() || static_cast<Index>(arr.size()) != nx)
          throw InvalidFile("p_x does not match x_size");
        VecX<S> v(nx);
        for (Index i = 0; i < nx; ++i)
          v(i) = detail::scalar_from_json<S>(arr[static_cast<std::size_t>(i)]);
        data.p_x = Dist<S>::from_mass(std::get<Channel<S>>(data.channel).input(), std::move(v));
      }
    };
    if (data.exact)
      build(Rational{});
    else
      build(double{});
    return data;
  } catch (const json::exception& e) {
    throw InvalidFile(std::string("malformed channel file: ") + e.what());
  } catch (const InvalidConstruction& e) {
    throw InvalidFile(std::string("invalid channel file: ") + e.what());
  } catch (const DimensionMismatch& e) {
    throw InvalidFile(std::string("invalid channel file: ") + e.what());
  }
}

inline ChannelFileData read_channel_file(const std::string& path) {
  json j;
  try {
    j = json::parse(slurp(path));
  } catch (const json::exception& e) {
    throw InvalidFile(std::string("cannot parse ") + path + ": " + e.what());
  }
  return channel_from_json(j);
}

template <typename S>
void write_channel_file(const std::string& path, const Channel<S>& ch,
                        const Dist<S>* px = nullptr) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidFile("cannot write file: " + path);
  out << channel_to_json(ch, px).dump(2) << "\n";
}

// Stochastic self-map pair file: mu over X, eta over Y.
struct SoftPairFileData {
  bool exact = false;
  std::variant<SoftPair<double>, SoftPair<Rational>> pair;
};

inline SoftPairFileData read_soft_pair_file(const std::string& path) {
  json j;
  try {
    j = json::parse(slurp(path));
  } catch (const json::exception& e) {
    throw InvalidFile(std::string("cannot parse ") + path + ": " + e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != kChannelFileSchemaVersion)
      throw InvalidFile("unsupported pair file schema_version");
    const std::string mode = j.at("mode").get<std::string>();
    const Index nx = j.at("x_size").get<Index>();
    const Index ny = j.at("y_size").get<Index>();
    SoftPairFileData data;
    data.exact = mode == "exact";
    if (!data.exact && mode != "float") throw InvalidFile("mode must be \"exact\" or \"float\"");
    auto build = [&](auto tag) {
      using S = decltype(tag);
      Alphabet ax = Alphabet::of_size(nx), ay = Alphabet::of_size(ny);
      MatX<S> mu = detail::matrix_from_json<S>(j.at("mu"), nx, nx, "mu");
      MatX<S> eta = detail::matrix_from_json<S>(j.at("eta"), ny, ny, "eta");
      data.pair = SoftPair<S>{Channel<S>::from_matrix(ax, ax, std::move(mu)),
                              Channel<S>::from_matrix(ay, ay, std::move(eta))};
    };
    if (data.exact)
      build(Rational{});
    else
      build(double{});
    return data;
  } catch (const json::exception& e) {
    throw InvalidFile(std::string("malformed pair file: ") + e.what());
  } catch (const InvalidConstruction& e) {
    throw InvalidFile(std::string("invalid pair file: ") + e.what());
  }
}

template <typename S>
json soft_pair_to_json(const SoftPair<S>& pair) {
  json out;
  out["schema_version"] = kChannelFileSchemaVersion;
  out["mode"] = scalar_traits<S>::mode_name();
  out["x_size"] = pair.mu.input().size;
  out["y_size"] = pair.eta.input().size;
  out["mu"] = detail::matrix_to_json(pair.mu.matrix());
  out["eta"] = detail::matrix_to_json(pair.eta.matrix());
  return out;
}

}  // namespace iib
