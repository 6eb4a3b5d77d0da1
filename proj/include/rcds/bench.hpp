#ifndef RCDS_BENCH_HPP
#define RCDS_BENCH_HPP

#include <optional>
#include <string>
#include <vector>

#include "rcds/graph.hpp"

namespace rcds {

// Published reference values for the bundled IEEE instances. For nonplanar
// instances dstar_scd refers to a particular planarization, so our sphere-cut
// value is only checked as an upper bound of dstar there.
struct BenchExpectation {
    std::string name;
    int v = 0, e = 0;
    bool planar = false;
    int bw_p = 0;
    int dstar_scd = 0;
    int dstar = 0;
    int ds = 0;
};

const std::vector<BenchExpectation>& table1_expectations();
const BenchExpectation* find_expectation(const std::string& name);

struct BenchRecord {
    std::string name;
    int v = 0, e = 0;
    bool planar = false;
    int width = 0;         // decomposition width actually used
    int dstar_scd = 0;     // sphere-cut pipeline value (exact when planar)
    std::optional<int> dstar; // branch and bound, when run
    std::optional<int> ds;    // dominating set, when run
    double t_scd = 0, t_dp = 0, t_solve = 0;
    std::vector<std::string> mismatches; // deviations from the expectations
};

// Solves one instance with the per-size method plan: the sphere-cut pipeline
// always runs (planarizing when needed); branch and bound and the dominating
// set baseline run when |V| <= exact_limit.
BenchRecord bench_instance(const std::string& name, const Graph& g, int exact_limit = 57);

std::vector<BenchRecord> bench_suite(const std::vector<std::pair<std::string, Graph>>& instances,
                                     int exact_limit = 57);

std::string render_bench_table(const std::vector<BenchRecord>& records);
std::string bench_to_json(const std::vector<BenchRecord>& records);

// Locates <dir>/<name>.edges and parses it.
Graph load_instance(const std::string& data_dir, const std::string& name);

} // namespace rcds

#endif
