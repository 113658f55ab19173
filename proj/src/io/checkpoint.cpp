#include "penalfr/io/checkpoint.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include <zlib.h>

namespace penalfr::io {

namespace {

constexpr char kMagic[8] = {'P', 'E', 'N', 'A', 'L', 'F', 'R', '\0'};

template <class T>
void put(std::vector<char>& buf, const T& v) {
  const char* p = reinterpret_cast<const char*>(&v);
  buf.insert(buf.end(), p, p + sizeof(T));
}

void put_doubles(std::vector<char>& buf, const double* d, std::size_t n) {
  const char* p = reinterpret_cast<const char*>(d);
  buf.insert(buf.end(), p, p + n * sizeof(double));
}

std::uint32_t checksum(const char* data, std::size_t n) {
  uLong c = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large buffers in chunks.
  while (n > 0) {
    const std::size_t chunk = std::min<std::size_t>(n, 1u << 30);
    c = crc32(c, reinterpret_cast<const Bytef*>(data), static_cast<uInt>(chunk));
    data += chunk;
    n -= chunk;
  }
  return static_cast<std::uint32_t>(c);
}

class Reader {
 public:
  Reader(const std::vector<char>& buf, std::size_t end) : buf_(buf), end_(end) {}
  template <class T>
  T get() {
    T v;
    need(sizeof(T));
    std::memcpy(&v, buf_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  void get_doubles(double* d, std::size_t n) {
    need(n * sizeof(double));
    std::memcpy(d, buf_.data() + pos_, n * sizeof(double));
    pos_ += n * sizeof(double);
  }
  std::size_t pos() const { return pos_; }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > end_) throw CheckpointError("checkpoint: file is truncated");
  }
  const std::vector<char>& buf_;
  std::size_t end_;
  std::size_t pos_ = 0;
};

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
  std::vector<char> buf;
  buf.insert(buf.end(), kMagic, kMagic + 8);
  put(buf, kCheckpointVersion);
  put(buf, cp.mesh_hash);
  put(buf, static_cast<std::int64_t>(cp.step));
  put(buf, cp.t);
  put(buf, static_cast<std::uint64_t>(cp.field.n_elements()));
  put(buf, static_cast<std::uint64_t>(cp.field.points_per_element()));
  put(buf, static_cast<std::uint64_t>(cp.sfd_state.q.size()));
  put(buf, static_cast<std::uint64_t>(cp.sfd_state.q_bar.size()));
  const auto raw = cp.field.raw();
  put_doubles(buf, raw.data(), raw.size());
  put_doubles(buf, cp.sfd_state.q.data(), cp.sfd_state.q.size());
  put_doubles(buf, cp.sfd_state.q_bar.data(), cp.sfd_state.q_bar.size());
  put(buf, checksum(buf.data(), buf.size()));

  // Write to a sibling file and rename so a crash never leaves a torn file.
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw CheckpointError("checkpoint: cannot open '" + tmp.string() + "' for writing");
    f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!f) throw CheckpointError("checkpoint: write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw CheckpointError("checkpoint: cannot move into '" + path.string() + "': " + ec.message());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CheckpointError("checkpoint: cannot open '" + path.string() + "'");
  const std::vector<char> buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (buf.size() < 8 + sizeof(std::uint32_t)) throw CheckpointError("checkpoint: file is truncated");
  if (std::memcmp(buf.data(), kMagic, 8) != 0) throw CheckpointError("checkpoint: not a penalfr checkpoint");

  const std::size_t body = buf.size() - sizeof(std::uint32_t);
  Reader r(buf, body);
  r.get<std::uint64_t>();  // magic
  const auto version = r.get<std::uint32_t>();
  if (version != kCheckpointVersion) {
    throw CheckpointError("checkpoint: version " + std::to_string(version) + " not supported (expected " +
                          std::to_string(kCheckpointVersion) + ")");
  }
  std::uint32_t stored;
  std::memcpy(&stored, buf.data() + body, sizeof(stored));
  if (stored != checksum(buf.data(), body)) throw CheckpointError("checkpoint: checksum mismatch (corrupted file)");

  Checkpoint cp;
  cp.mesh_hash = r.get<std::uint32_t>();
  cp.step = r.get<std::int64_t>();
  cp.t = r.get<double>();
  const auto ne = r.get<std::uint64_t>();
  const auto np = r.get<std::uint64_t>();
  const auto nq = r.get<std::uint64_t>();
  const auto nqb = r.get<std::uint64_t>();
  const std::size_t expect = r.pos() + (ne * np * kNumVars + nq + nqb) * sizeof(double);
  if (expect != body) throw CheckpointError("checkpoint: size does not match header");
  cp.field = FlowField(ne, np);
  auto raw = cp.field.raw();
  r.get_doubles(raw.data(), raw.size());
  cp.sfd_state.q.resize(nq);
  cp.sfd_state.q_bar.resize(nqb);
  r.get_doubles(cp.sfd_state.q.data(), nq);
  r.get_doubles(cp.sfd_state.q_bar.data(), nqb);
  return cp;
}

Checkpoint load_checkpoint(const std::filesystem::path& path, std::uint32_t expected_mesh_hash) {
  Checkpoint cp = load_checkpoint(path);
  if (cp.mesh_hash != expected_mesh_hash) {
    throw CheckpointError("checkpoint: mesh hash " + std::to_string(cp.mesh_hash) + " does not match the configured mesh (" +
                          std::to_string(expected_mesh_hash) + ")");
  }
  return cp;
}

}  // namespace penalfr::io
