#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

namespace randcomplex {

using Vertex = std::uint32_t;

/// A nonempty simplex given by its strictly increasing, 1-based vertex labels.
class Simplex {
 public:
  Simplex(std::initializer_list<Vertex> vertices);
  explicit Simplex(std::vector<Vertex> vertices);
  explicit Simplex(std::span<const Vertex> vertices);

  int dim() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  std::span<const Vertex> view() const noexcept { return vertices_; }
  Vertex front() const { return vertices_.front(); }
  Vertex back() const { return vertices_.back(); }

  bool contains(Vertex v) const noexcept;
  bool is_face_of(const Simplex& other) const noexcept;

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex&, const Simplex&) = default;

 private:
  void validate() const;

  std::vector<Vertex> vertices_;
};

std::ostream& operator<<(std::ostream& os, const Simplex& s);

}  // namespace randcomplex
