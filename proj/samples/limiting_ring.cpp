// Orbits of the unit limiting ring from inside and outside.
// Usage: sample_limiting_ring [out.svg]
#include <cmath>
#include <cstdio>
#include <fstream>

#include "mapgeo/mapgeo.hpp"

int main(int argc, char** argv) {
  using namespace mapgeo;
  const auto ring = limiting_ring_field(1.0, 1.0, RingBranch::Minus);
  std::vector<Orbit> orbits;
  for (double r0 : {0.5, 2.0}) {
    orbits.push_back(ring_orbit(ring, r0, 1e-3, 50.0));
    const auto& o = orbits.back();
    std::printf("r0=%.1f:", r0);
    for (double t : {0.0, 1.0, 5.0, 10.0, 50.0}) {
      const auto k = std::min(o.points.size() - 1, static_cast<std::size_t>(std::llround(t / o.step)));
      std::printf("  rho(%g)=%.6f", t, std::hypot(o.points[k].x, o.points[k].y));
    }
    std::printf("\n");
  }
  if (argc > 1) {
    std::ofstream(argv[1]) << render_orbits_svg(orbits);
    std::printf("wrote %s\n", argv[1]);
  }
  return 0;
}
