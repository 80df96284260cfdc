#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>

namespace bsv {

/// One file per key under a directory. The file name is a hash of the key;
/// the first line of the file repeats the key so collisions read as misses.
class ContentStore {
 public:
  explicit ContentStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  const std::filesystem::path& dir() const { return dir_; }

  static std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  std::filesystem::path path_for(std::string_view key) const {
    std::ostringstream name;
    name << std::hex;
    name.width(16);
    name.fill('0');
    name << fnv1a(key);
    return dir_ / (name.str() + ".poly");
  }

  std::optional<std::string> load(std::string_view key) const {
    std::ifstream in(path_for(key));
    if (!in) return std::nullopt;
    std::string header;
    std::string payload;
    if (!std::getline(in, header) || header != key || !std::getline(in, payload)) return std::nullopt;
    return payload;
  }

  /// Writes to a temporary file and renames it into place, so readers see
  /// either nothing or a complete entry.
  void store(std::string_view key, std::string_view payload) const {
    static std::atomic<std::uint64_t> counter{0};
    const auto target = path_for(key);
    auto tmp = target;
    tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "." +
           std::to_string(counter++);
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << key << '\n' << payload << '\n';
      if (!out) return;
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) std::filesystem::remove(tmp, ec);
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace bsv
