#include "preftest/profile_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "preftest/error.hpp"

namespace preftest {

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

Profile read_profile(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_content_line(in, line, line_no)) throw Error(Errc::ParseError, "empty profile file");
  long long m = 0;
  long long n = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> m >> n) || (header >> extra)) {
      throw Error(Errc::ParseError, "line 1: expected \"m n\"");
    }
  }
  if (m < 1 || n < 1) throw Error(Errc::ParseError, "line 1: m and n must be positive");

  std::vector<LinearOrder> orders;
  orders.reserve(static_cast<std::size_t>(n));
  std::vector<Alternative> ids;
  for (long long i = 0; i < n; ++i) {
    if (!next_content_line(in, line, line_no)) {
      throw Error(Errc::ParseError, "expected " + std::to_string(n) + " orders, found " +
                                        std::to_string(i));
    }
    std::istringstream row(line);
    ids.clear();
    long long a = 0;
    while (row >> a) ids.push_back(static_cast<Alternative>(a));
    if (!row.eof()) {
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": non-integer token");
    }
    if (static_cast<long long>(ids.size()) != m) {
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(m) + " alternatives");
    }
    try {
      orders.push_back(make_order(ids));
    } catch (const Error& e) {
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (next_content_line(in, line, line_no)) {
    throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": trailing content");
  }
  return Profile(static_cast<int>(m), std::move(orders));
}

void write_profile(std::ostream& out, const Profile& profile) {
  out << profile.num_alternatives() << ' ' << profile.size() << '\n';
  for (const auto& order : profile.orders()) {
    const auto r = order.ranking();
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << ' ';
      out << r[i];
    }
    out << '\n';
  }
}

Profile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  try {
    return read_profile(in);
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw Error(Errc::ParseError, path.string() + ": " + e.what());
    throw;
  }
}

void save_profile(const std::filesystem::path& path, const Profile& profile) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  write_profile(out, profile);
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

}  // namespace preftest
