// Traces the closed m-line around the inner triangle of the prism map and
// writes it as SVG. Usage: sample_closed_triangle [map] [out.svg]
#include <cstdio>
#include <fstream>

#include "mapgeo/mapgeo.hpp"

int main(int argc, char** argv) {
  using namespace mapgeo;
  const std::string path = argc > 1 ? argv[1] : MAPGEO_DATA_DIR "/prism.map";
  const auto m = load_map(path);
  const auto t = trace_mline(m, {0.0, -4.0}, {1.0, 0.0});

  double sum = 0.0;
  for (double f : t.f_values()) sum += f;
  std::printf("%s, %zu crossings\n", std::string(to_string(t.classification)).c_str(), t.crossings.size());
  std::printf("sum f     = %.12f (pi = %.12f)\n", sum, kPi);
  std::printf("curvature = %.12f\n", curvature(t));
  std::printf("predicted = %s\n", std::string(to_string(predict_class(t.f_values()).kind)).c_str());

  if (argc > 2) {
    std::ofstream(argv[2]) << render_svg({t}, m);
    std::printf("wrote %s\n", argv[2]);
  }
  return t.classification == TraceClass::ClosedSimple ? 0 : 1;
}
