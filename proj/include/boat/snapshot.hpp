#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "boat/error.hpp"
#include "boat/frame.hpp"

namespace boat {

// On-disk columnar snapshot: one directory per frame, a JSON manifest
// plus one binary file per column. Integers and doubles little-endian
// fixed width; text stored as a dictionary of length-prefixed UTF-8
// strings plus int32 codes.

namespace detail {

template <typename T>
void write_pod(std::ostream& out, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T read_pod(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!in) throw Error("snapshot-corrupt", "truncated column file");
  return v;
}

inline void write_column_file(const std::filesystem::path& path, const Column& col) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io-error", "cannot write " + path.string());
  write_pod<std::uint64_t>(out, col.size());
  if (col.type() == ColumnType::Text) {
    write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(col.dict().size()));
    for (const auto& s : col.dict()) {
      write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
      out.write(s.data(), static_cast<std::streamsize>(s.size()));
    }
    for (auto c : col.codes()) write_pod<std::int32_t>(out, c);
  } else if (col.type() == ColumnType::Real) {
    out.write(reinterpret_cast<const char*>(col.nulls().data()),
              static_cast<std::streamsize>(col.nulls().size()));
    for (auto v : col.reals()) write_pod<double>(out, v);
  } else {
    out.write(reinterpret_cast<const char*>(col.nulls().data()),
              static_cast<std::streamsize>(col.nulls().size()));
    for (auto v : col.ints()) write_pod<std::int64_t>(out, v);
  }
  if (!out) throw Error("io-error", "write failed for " + path.string());
}

inline Column read_column_file(const std::filesystem::path& path, ColumnType type) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io-error", "cannot read " + path.string());
  auto n = read_pod<std::uint64_t>(in);
  if (type == ColumnType::Text) {
    auto dict_size = read_pod<std::uint32_t>(in);
    std::vector<std::string> dict(dict_size);
    for (auto& s : dict) {
      auto len = read_pod<std::uint32_t>(in);
      s.resize(len);
      in.read(s.data(), len);
      if (!in) throw Error("snapshot-corrupt", "truncated dictionary in " + path.string());
    }
    std::vector<std::int32_t> codes(n);
    for (auto& c : codes) c = read_pod<std::int32_t>(in);
    return Column::text(std::move(codes), std::move(dict));
  }
  std::vector<std::uint8_t> nulls(n);
  if (n) {
    in.read(reinterpret_cast<char*>(nulls.data()), static_cast<std::streamsize>(n));
    if (!in) throw Error("snapshot-corrupt", "truncated null mask in " + path.string());
  }
  if (type == ColumnType::Real) {
    std::vector<double> v(n);
    for (auto& x : v) x = read_pod<double>(in);
    return Column::real(std::move(v), std::move(nulls));
  }
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = read_pod<std::int64_t>(in);
  return Column::numeric(type, std::move(v), std::move(nulls));
}

}  // namespace detail

inline void write_snapshot(const Frame& frame, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json manifest;
  manifest["row_count"] = frame.row_count();
  manifest["columns"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < frame.column_count(); ++i) {
    const auto& col = frame.column(i);
    std::string file = "c" + std::to_string(i) + ".bin";
    manifest["columns"].push_back({{"name", frame.column_name(i)},
                                   {"type", column_type_name(col.type())},
                                   {"rows", col.size()},
                                   {"file", file}});
    detail::write_column_file(dir / file, col);
  }
  manifest["roles"] = frame.roles();
  std::ofstream out(dir / "manifest.json");
  if (!out) throw Error("io-error", "cannot write manifest in " + dir.string());
  out << manifest.dump(2) << '\n';
}

inline Frame read_snapshot(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw Error("io-error", "no manifest.json in " + dir.string());
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw Error("snapshot-corrupt", "bad manifest: " + std::string(e.what()));
  }
  Frame frame;
  for (const auto& entry : manifest.at("columns")) {
    auto type = column_type_from_name(entry.at("type").get<std::string>());
    auto col = detail::read_column_file(dir / entry.at("file").get<std::string>(), type);
    if (col.size() != entry.at("rows").get<std::size_t>())
      throw Error("snapshot-corrupt", "row count mismatch in column " + entry.at("name").get<std::string>());
    frame.add_column(entry.at("name").get<std::string>(), std::move(col));
  }
  if (manifest.contains("roles"))
    for (const auto& [role, name] : manifest.at("roles").items())
      frame.bind_role(role, name.get<std::string>());
  return frame;
}

inline bool is_snapshot_dir(const std::filesystem::path& p) {
  return std::filesystem::is_directory(p) && std::filesystem::exists(p / "manifest.json");
}

}  // namespace boat
