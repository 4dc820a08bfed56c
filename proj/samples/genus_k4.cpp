// Genus distribution and map counts for K4, or for an edge list given on the
// command line.
#include <cstdio>

#include "mapgeo/mapgeo.hpp"

int main(int argc, char** argv) {
  using namespace mapgeo;
  const auto g = argc > 1 ? SimpleGraph::from_edges(parse_edge_list(read_file(argv[1]))) : complete_graph(4);
  const auto r = enumerate(g);
  std::printf("nu=%zu eps=%zu betti=%ld |Aut|=%s\n", r.nu, r.eps, static_cast<long>(r.betti), r.aut.str().c_str());
  std::printf("genus polynomial: %s (%s rotation systems)\n", r.genus.to_string().c_str(), r.genus.total().str().c_str());
  std::printf("n_O=%s n_N=%s\n", to_string(r.n_O).c_str(), to_string(r.n_N).c_str());
  std::printf("with boundary: n_O=%s n_N=%s\n", to_string(r.n_O_b).c_str(), to_string(r.n_N_b).c_str());
  return 0;
}
