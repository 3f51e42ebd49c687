#include "wordtensor/io.hpp"

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace wt {

namespace {

// Compact SHA-256 (FIPS 180-4).
struct Sha256 {
  std::array<std::uint32_t, 8> h = {0x6a09e667, 0xbb67ae85, 0x3c6ef372,
                                    0xa54ff53a, 0x510e527f, 0x9b05688c,
                                    0x1f83d9ab, 0x5be0cd19};
  std::array<std::uint8_t, 64> buf{};
  std::uint64_t total = 0;
  std::size_t fill = 0;

  static constexpr std::array<std::uint32_t, 64> k = {
      0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
      0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
      0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
      0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
      0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
      0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
      0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
      0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
      0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
      0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
      0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

  static std::uint32_t rotr(std::uint32_t x, int n) {
    return (x >> n) | (x << (32 - n));
  }

  void block(const std::uint8_t* p) {
    std::uint32_t w[64];
    for (int i = 0; i < 16; ++i)
      w[i] = (p[4 * i] << 24) | (p[4 * i + 1] << 16) | (p[4 * i + 2] << 8) |
             p[4 * i + 3];
    for (int i = 16; i < 64; ++i) {
      std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    auto [a, b, c, d, e, f, g, hh] = h;
    for (int i = 0; i < 64; ++i) {
      std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      std::uint32_t ch = (e & f) ^ (~e & g);
      std::uint32_t t1 = hh + s1 + ch + k[i] + w[i];
      std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      std::uint32_t t2 = s0 + maj;
      hh = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h[0] += a;
    h[1] += b;
    h[2] += c;
    h[3] += d;
    h[4] += e;
    h[5] += f;
    h[6] += g;
    h[7] += hh;
  }

  void update(const std::uint8_t* p, std::size_t len) {
    total += len;
    while (len > 0) {
      std::size_t take = std::min(len, buf.size() - fill);
      std::copy(p, p + take, buf.begin() + fill);
      fill += take;
      p += take;
      len -= take;
      if (fill == 64) {
        block(buf.data());
        fill = 0;
      }
    }
  }

  std::string finish() {
    std::uint64_t bits = total * 8;
    std::uint8_t pad = 0x80;
    update(&pad, 1);
    std::uint8_t zero = 0;
    while (fill != 56) update(&zero, 1);
    std::uint8_t len[8];
    for (int i = 0; i < 8; ++i) len[i] = (bits >> (56 - 8 * i)) & 0xff;
    update(len, 8);
    char out[65];
    for (int i = 0; i < 8; ++i) std::snprintf(out + 8 * i, 9, "%08x", h[i]);
    return std::string(out, 64);
  }
};

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, int rows, int cols,
                                 const char* what) {
  if (static_cast<int>(j.size()) != rows)
    throw std::invalid_argument(std::string("weights json: bad row count for ") +
                                what);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols)
      throw std::invalid_argument(
          std::string("weights json: bad column count for ") + what);
    for (int c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  Sha256 s;
  s.update(reinterpret_cast<const std::uint8_t*>(data.data()), data.size());
  return s.finish();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

void ensure_directory(const std::string& path) {
  std::filesystem::create_directories(path);
}

std::string weights_to_json(const Weights& w) {
  nlohmann::json j;
  j["group"] = w.group ? w.group->name() : "";
  j["width"] = w.width();
  j["a"] = matrix_to_json(w.a);
  j["b"] = matrix_to_json(w.b);
  j["c"] = matrix_to_json(w.c);
  return j.dump(1);
}

Weights weights_from_json(const std::string& text, const FiniteGroup& g) {
  auto j = nlohmann::json::parse(text);
  std::string name = j.at("group").get<std::string>();
  if (name != g.name())
    throw std::invalid_argument("weights json: group '" + name +
                                "' does not match '" + g.name() + "'");
  int m = j.at("width").get<int>();
  Weights w;
  w.group = &g;
  w.a = matrix_from_json(j.at("a"), m, g.order(), "a");
  w.b = matrix_from_json(j.at("b"), m, g.order(), "b");
  w.c = matrix_from_json(j.at("c"), m, g.order(), "c");
  w.check_consistent();
  return w;
}

std::string character_table_csv(const CharacterTable& t) {
  std::ostringstream out;
  out << "irrep,degree";
  for (std::size_t j = 0; j < t.class_sizes.size(); ++j)
    out << ",class" << j << "(size " << t.class_sizes[j] << ")";
  out << "\n";
  for (int i = 0; i < t.num_irreps(); ++i) {
    out << i << "," << t.degrees[i];
    for (int j = 0; j < t.num_irreps(); ++j) {
      auto v = t.chars(i, j);
      out << "," << fmt(v.real(), 10);
      if (std::abs(v.imag()) > 1e-10) out << (v.imag() >= 0 ? "+" : "") << fmt(v.imag(), 10) << "i";
    }
    out << "\n";
  }
  return out.str();
}

std::string bscs_csv(const BscSystem& sys) {
  std::ostringstream out;
  out << "index,type,d,D\n";
  for (const Bsc& b : sys.bscs) {
    const char* ty = b.type == BscType::I ? "I" : b.type == BscType::II ? "II" : "III";
    out << b.index << "," << ty << "," << b.d << "," << b.D << "\n";
  }
  return out.str();
}

std::string fusion_csv(const FusionTable& f) {
  std::ostringstream out;
  for (int i = 0; i < f.size(); ++i) {
    for (int j = 0; j < f.size(); ++j) {
      if (j) out << ",";
      const auto& e = f.at(i, j);
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (k) out << ";";
        out << e[k];
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string support_csv(const SupportSet& s, bool with_norms) {
  std::ostringstream out;
  out << (with_norms ? "phi,psi,zeta,norm2\n" : "phi,psi,zeta\n");
  for (const Triple& t : s.triples) {
    out << t[0] << "," << t[1] << "," << t[2];
    if (with_norms) {
      auto it = s.norms.find(t);
      out << "," << fmt(it == s.norms.end() ? 0.0 : it->second, 10);
    }
    out << "\n";
  }
  return out.str();
}

std::string heatmap_csv(const HeatmapData& h) {
  std::ostringstream out;
  out << "matrix,row";
  for (const std::string& c : h.column_names) out << "," << c;
  out << "\n";
  auto rows = [&](const char* tag, const Eigen::MatrixXd& m) {
    for (int i = 0; i < m.rows(); ++i) {
      out << tag << "," << i;
      for (int j = 0; j < m.cols(); ++j) out << "," << fmt(m(i, j), 10);
      out << "\n";
    }
  };
  rows("A", h.a);
  rows("B", h.b);
  rows("C", h.c);
  return out.str();
}

std::string metrics_csv(const RunRecord& run, int num_bscs) {
  std::ostringstream out;
  out << "epoch,train_loss,test_loss,train_acc,test_acc";
  for (int b = 0; b < num_bscs; ++b) out << ",bsc_loss_" << b;
  out << "\n";
  for (const EpochRecord& er : run.history) {
    out << er.epoch << "," << fmt(er.train_loss, 10) << ","
        << fmt(er.test_loss, 10) << "," << fmt(er.train_acc, 10) << ","
        << fmt(er.test_acc, 10);
    for (double v : er.bsc_losses) out << "," << fmt(v, 10);
    out << "\n";
  }
  return out.str();
}

RunArtifacts persist_run(const RunRecord& run, const std::string& config_json,
                         const std::string& outdir) {
  ensure_directory(outdir);
  RunArtifacts art;
  art.outdir = outdir;
  int num_bscs = run.history.empty()
                     ? 0
                     : static_cast<int>(run.history.front().bsc_losses.size());

  nlohmann::json summary;
  summary["epochs_run"] = run.epochs_run;
  summary["stop_reason"] = run.stop_reason;
  summary["final_monitored_loss"] = run.final_monitored_loss;
  summary["wall_seconds"] = run.wall_seconds;
  if (!run.history.empty()) {
    const EpochRecord& last = run.history.back();
    summary["final_train_loss"] = last.train_loss;
    summary["final_test_loss"] = last.test_loss;
    summary["final_train_acc"] = last.train_acc;
    summary["final_test_acc"] = last.test_acc;
  }

  std::vector<std::pair<std::string, std::string>> files = {
      {"metrics.csv", metrics_csv(run, num_bscs)},
      {"weights.json", weights_to_json(run.terminal)},
      {"config.json", config_json},
      {"summary.json", summary.dump(1)},
  };
  nlohmann::json manifest;
  for (const auto& [name, content] : files) {
    write_file(outdir + "/" + name, content);
    std::string hash = sha256_hex(content);
    manifest[name] = hash;
    art.files_and_hashes.push_back({name, hash});
  }
  write_file(outdir + "/manifest.json", manifest.dump(1));
  return art;
}

}  // namespace wt
