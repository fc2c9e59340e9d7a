// Prints, for each lambda-plane up to 12, the uniqueness verdict and the shape
// of the solution set for the equilateral triangle.
#include <cmath>
#include <cstdio>
#include <vector>

#include "ftplane/ftplane.hpp"

int main() {
  const std::vector<ftplane::Point2> tri{{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
  for (int lambda = 2; lambda <= 12; ++lambda) {
    const auto plane = ftplane::make_lambda_norm(lambda);
    const auto verdict = ftplane::classify_lambda(lambda);
    const auto sol = ftplane::ft_solve(plane.norm, tri);
    std::printf("lambda=%-3d %-10s triangle set: %-8s objective %.9f\n", lambda,
                ftplane::is_unique(verdict) ? "unique" : "nonunique",
                std::string(ftplane::to_string(sol.region.kind)).c_str(), sol.objective);
  }
}
