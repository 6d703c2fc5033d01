#pragma once

#include "unram/cochain/cohomology.hpp"

#include <filesystem>
#include <iosfwd>
#include <mutex>

namespace unram::cli {

class CacheCorrupt : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// SHA-256 over the canonical table bytes followed by degree and modulus.
// No canonicalization: relabeled copies of a group get different keys.
std::string cacheKey(const groups::FiniteGroup& g, unsigned degree, exactla::Scalar modulus);
std::string sha256Hex(std::string_view bytes);

// One file per key under dir. A file is a header line carrying the payload
// digest, then the serialized structure. Files are written to a temporary
// name and renamed into place. A corrupt entry is reported on the warning
// stream and treated as a miss.
class DiskCache : public cochain::PersistenceBackend {
 public:
  DiskCache(std::filesystem::path dir, std::ostream* warnings = nullptr);

  std::optional<exactla::ModSubquotient> load(const groups::FiniteGroup& g, unsigned n, exactla::Scalar m) override;
  void save(const groups::FiniteGroup& g, unsigned n, exactla::Scalar m, const exactla::ModSubquotient& s) override;

  std::filesystem::path pathFor(const groups::FiniteGroup& g, unsigned n, exactla::Scalar m) const;
  // Throws CacheCorrupt.
  exactla::ModSubquotient read(const std::filesystem::path& file, std::uint64_t expectedDim) const;
  std::size_t corruptSeen() const { return corrupt_; }

 private:
  std::filesystem::path dir_;
  std::ostream* warn_;
  std::mutex mu_;
  std::size_t corrupt_ = 0;
};

}  // namespace unram::cli
