#pragma once

#include <filesystem>
#include <iosfwd>

#include "preftest/order.hpp"

namespace preftest {

// Text format: first line "m n", then n lines each holding a space separated
// permutation of 0..m-1, most preferred first. LF line endings.
Profile read_profile(std::istream& in);
void write_profile(std::ostream& out, const Profile& profile);

Profile load_profile(const std::filesystem::path& path);
void save_profile(const std::filesystem::path& path, const Profile& profile);

}  // namespace preftest
