#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>

namespace stardecomp {

/// Externally supplied independence-ratio values, one per degree.
/// CSV layout: header `d,alpha`, then `d,alpha` rows.
class AlphaTable {
 public:
  AlphaTable() = default;

  static AlphaTable parse(std::istream& in);
  static AlphaTable load(const std::filesystem::path& path);

  /// Writes with 17 significant digits so a reload is exact.
  void write(std::ostream& out) const;

  void set(int d, double alpha);
  std::optional<double> lookup(int d) const;
  bool empty() const { return values_.empty(); }
  std::size_t size() const { return values_.size(); }
  const std::map<int, double>& values() const { return values_; }

 private:
  std::map<int, double> values_;
};

}  // namespace stardecomp
