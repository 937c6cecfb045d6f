#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "bkev/error.hpp"
#include "bkev/io.hpp"

namespace bkev {

namespace fs = std::filesystem;

namespace {

template <class U>
void put(std::string& out, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

template <class U>
U get(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(U) > in.size()) throw ParseError("trajectory file truncated");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  pos += sizeof(U);
  return v;
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

std::string read_text(const fs::path& path) { return read_bytes(path); }

void write_text(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = digits[h & 0xf];
  return s;
}

std::string file_hash(const fs::path& path) { return fnv1a_hex(read_bytes(path)); }

void write_trajectory(const fs::path& path, const Trajectory& t, Dtype dtype) {
  const PeriodicGrid& g = t.grid();
  std::string out = "BKEV";
  put<std::uint32_t>(out, kTrajectoryFormatVersion);
  put<std::uint8_t>(out, static_cast<std::uint8_t>(dtype));
  put<std::uint8_t>(out, static_cast<std::uint8_t>(g.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(t.channels()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(t.frames().size()));
  const std::size_t width = dtype == Dtype::Float32 ? 4 : 8;
  out.reserve(out.size() + t.frames().size() * t.channels() * g.size() * width);
  for (const Field& f : t.frames()) {
    for (double v : f.values()) {
      if (dtype == Dtype::Float32)
        put(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
      else
        put(out, std::bit_cast<std::uint64_t>(v));
    }
  }
  write_text(path, out);

  const nlohmann::json meta{{"pde", t.pde_id()}, {"seed", t.seed()}, {"edge_length", g.edge_length()},
                            {"times", t.times()}};
  fs::path sidecar = path;
  sidecar += ".json";
  write_text(sidecar, meta.dump(2) + "\n");
}

Trajectory read_trajectory(const fs::path& path) {
  const std::string in = read_bytes(path);
  if (in.size() < 4 || in.compare(0, 4, "BKEV") != 0) throw ParseError(path.string() + ": bad magic");
  std::size_t pos = 4;
  const auto version = get<std::uint32_t>(in, pos);
  if (version != kTrajectoryFormatVersion)
    throw ParseError(path.string() + ": unsupported version " + std::to_string(version));
  const auto dtype = get<std::uint8_t>(in, pos);
  if (dtype > 1) throw ParseError(path.string() + ": unknown dtype " + std::to_string(dtype));
  const int dim = get<std::uint8_t>(in, pos);
  const auto channels = get<std::uint32_t>(in, pos);
  const auto n = get<std::uint32_t>(in, pos);
  const auto n_frames = get<std::uint32_t>(in, pos);

  std::string pde;
  std::uint64_t seed = 0;
  double edge_length = 1.0;
  std::vector<double> times;
  fs::path sidecar = path;
  sidecar += ".json";
  if (fs::exists(sidecar)) {
    try {
      const auto meta = nlohmann::json::parse(read_bytes(sidecar));
      pde = meta.at("pde").get<std::string>();
      seed = meta.at("seed").get<std::uint64_t>();
      edge_length = meta.at("edge_length").get<double>();
      times = meta.at("times").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(sidecar.string() + ": " + e.what());
    }
  } else {
    for (std::uint32_t i = 0; i < n_frames; ++i) times.push_back(i + 1.0);
  }

  const PeriodicGrid grid(dim, static_cast<int>(n), edge_length);
  const std::size_t per_frame = grid.size() * channels;
  const std::size_t width = dtype == 0 ? 4 : 8;
  if (in.size() - pos != per_frame * n_frames * width)
    throw ParseError(path.string() + ": payload size does not match header");
  std::vector<Field> frames;
  for (std::uint32_t f = 0; f < n_frames; ++f) {
    std::vector<double> values(per_frame);
    for (double& v : values)
      v = dtype == 0 ? static_cast<double>(std::bit_cast<float>(get<std::uint32_t>(in, pos)))
                     : std::bit_cast<double>(get<std::uint64_t>(in, pos));
    frames.emplace_back(grid, static_cast<int>(channels), std::move(values));
  }
  return Trajectory(std::move(pde), std::move(frames), std::move(times), seed);
}

}  // namespace bkev
