#include "randcomplex/simplex.hpp"

#include <algorithm>
#include <string>

#include "randcomplex/error.hpp"

namespace randcomplex {

Simplex::Simplex(std::initializer_list<Vertex> vertices) : vertices_(vertices) {
  validate();
}

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  validate();
}

Simplex::Simplex(std::span<const Vertex> vertices)
    : vertices_(vertices.begin(), vertices.end()) {
  validate();
}

void Simplex::validate() const {
  if (vertices_.empty()) {
    fail(ErrorCode::InvalidArgument, "a simplex needs at least one vertex");
  }
  if (vertices_.front() == 0) {
    fail(ErrorCode::OutOfRange, "vertex labels are 1-based");
  }
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (vertices_[i - 1] >= vertices_[i]) {
      fail(ErrorCode::InvalidArgument, "simplex vertices must be strictly increasing");
    }
  }
}

bool Simplex::contains(Vertex v) const noexcept {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Simplex::is_face_of(const Simplex& other) const noexcept {
  return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(),
                       vertices_.end());
}

std::ostream& operator<<(std::ostream& os, const Simplex& s) {
  os << '(';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ',';
    os << s.vertices()[i];
  }
  return os << ')';
}

}  // namespace randcomplex
