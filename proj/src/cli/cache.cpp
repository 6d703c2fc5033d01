#include "unram/cli/cache.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unistd.h>

namespace unram::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kMagic = "unram-cache 1 ";

}  // namespace

std::string sha256Hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("SHA-256 digest failed");
  std::ostringstream out;
  for (unsigned i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

std::string cacheKey(const groups::FiniteGroup& g, unsigned degree, exactla::Scalar modulus) {
  std::string bytes = g.canonicalBytes();
  bytes += "|n=" + std::to_string(degree) + "|m=" + std::to_string(modulus);
  return sha256Hex(bytes);
}

DiskCache::DiskCache(fs::path dir, std::ostream* warnings) : dir_(std::move(dir)), warn_(warnings) {
  fs::create_directories(dir_);
}

fs::path DiskCache::pathFor(const groups::FiniteGroup& g, unsigned n, exactla::Scalar m) const {
  return dir_ / (cacheKey(g, n, m) + ".sq");
}

exactla::ModSubquotient DiskCache::read(const fs::path& file, std::uint64_t expectedDim) const {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw CacheCorrupt("cannot open " + file.string());
  std::string header;
  std::getline(in, header);
  if (header.size() != kMagic.size() + 64 || header.compare(0, kMagic.size(), kMagic) != 0)
    throw CacheCorrupt("bad header in " + file.string());
  std::string payload((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (sha256Hex(payload) != header.substr(kMagic.size())) throw CacheCorrupt("digest mismatch in " + file.string());
  std::istringstream body(payload);
  try {
    auto s = exactla::ModSubquotient::read(body);
    if (s.ambientDim() != expectedDim) throw CacheCorrupt("wrong dimension in " + file.string());
    return s;
  } catch (const CacheCorrupt&) {
    throw;
  } catch (const std::exception& e) {
    throw CacheCorrupt(file.string() + ": " + e.what());
  }
}

std::optional<exactla::ModSubquotient> DiskCache::load(const groups::FiniteGroup& g, unsigned n, exactla::Scalar m) {
  const fs::path file = pathFor(g, n, m);
  std::error_code ec;
  if (!fs::exists(file, ec)) return std::nullopt;
  try {
    return read(file, cochain::cochainDim(g.order(), n));
  } catch (const CacheCorrupt& e) {
    std::lock_guard lock(mu_);
    ++corrupt_;
    if (warn_) *warn_ << "warning: ignoring corrupt cache entry (" << e.what() << "), recomputing\n";
    return std::nullopt;
  }
}

void DiskCache::save(const groups::FiniteGroup& g, unsigned n, exactla::Scalar m, const exactla::ModSubquotient& s) {
  static std::atomic<std::uint64_t> counter{0};
  std::ostringstream body;
  s.write(body);
  const std::string payload = body.str();
  const fs::path file = pathFor(g, n, m);
  fs::path tmp = file;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << kMagic << sha256Hex(payload) << '\n' << payload;
    if (!out) {
      if (warn_) *warn_ << "warning: cannot write cache entry " << tmp << "\n";
      return;
    }
  }
  std::error_code ec;
  fs::rename(tmp, file, ec);
  if (ec) {
    fs::remove(tmp, ec);
    if (warn_) *warn_ << "warning: cannot place cache entry " << file << "\n";
  }
}

}  // namespace unram::cli
