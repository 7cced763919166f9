#include "sddac/csvio.hpp"

#include "sddac/errors.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace sddac {

std::string dstr(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp.replace_filename(".tmp-" + target.filename().string());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw IoError("rename failed: " + tmp.string() + " -> " + path +
                        " (" + ec.message() + ")");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool parse_num(const std::string& tok, double& out) {
  const char* s = tok.c_str();
  char* end = nullptr;
  out = std::strtod(s, &end);
  while (end && *end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
  return end != s && end && *end == '\0';
}

}  // namespace

std::vector<double> read_csv_column(const std::string& path, const std::string& column) {
  std::istringstream is(read_file(path));
  std::string line;
  std::vector<double> out;
  std::size_t col = 0;
  bool have_col = false;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (first) {
      first = false;
      double probe;
      if (!parse_num(fields[0], probe)) {  // header row
        const std::string want = column.empty() ? "v" : column;
        for (std::size_t i = 0; i < fields.size(); ++i)
          if (fields[i] == want) {
            col = i;
            have_col = true;
          }
        if (!have_col) {
          if (!column.empty())
            throw ConfigError("column '" + column + "' not found in " + path);
          if (fields.size() == 1)
            throw ConfigError("single header column in " + path + " is not numeric");
          throw ConfigError("no 'v' column in " + path + "; pass --column");
        }
        continue;
      }
      // headerless: only a single column is unambiguous
      if (fields.size() > 1 && column.empty())
        throw ConfigError(path + " has no header and several columns; pass --column");
      col = 0;
      have_col = true;
    }
    if (col >= fields.size())
      throw ConfigError(path + " line " + std::to_string(lineno) + ": missing column");
    double v;
    if (!parse_num(fields[col], v))
      throw ConfigError(path + " line " + std::to_string(lineno) +
                        ": not a number: '" + fields[col] + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("no samples in " + path);
  return out;
}

}  // namespace sddac
