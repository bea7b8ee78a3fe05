#pragma once

// Command layer behind the qregen binary: option structs plus one function
// per subcommand, writing data to `out` and diagnostics to `err` so the
// whole surface is testable without spawning a process.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qregen::cli {

// Exit-code contract shared by every subcommand.
inline constexpr int kExitOk = 0;           // all checks pass
inline constexpr int kExitCheckFailed = 1;  // verification / feasibility failure
inline constexpr int kExitUsage = 2;        // usage, parameter-domain, or schema error

struct PointsOptions {
    int n = 0, k = 0, d = 0;
    std::string file_size = "1";
    std::string format = "text";  // text | json
};

struct CurveOptions {
    int n = 0, k = 0, d = 0;
    std::string file_size = "1";
    std::string mode = "both";  // classical | quantum | both
    int samples = 0;            // interpolated rows per segment
    std::string format = "csv";  // csv | json
    std::string output;          // write data here instead of stdout
    std::string gnuplot;         // plot script path; needs --output
};

struct RatioOptions {
    int k = 0;
    int d_min = 0, d_max = 0;
    std::string metric = "msr";  // msr | mbr
    std::string format = "csv";  // csv | json
    std::string output;
    std::string gnuplot;
};

struct VerifyOptions {
    int n_max = 0;
    int trials = 50;
    std::uint64_t seed = 0;
    std::vector<std::string> alpha_grid;  // rationals; default 1,2,3,4
    std::vector<std::string> beta_grid;   // rationals; default 1/4,1/2,1,2
    int vertex_cap = 24;
    std::string format = "json";  // json | text
    std::string output;
};

struct SimulateOptions {
    std::string config_path;
    std::uint64_t seed = 0;
    std::string output;
};

struct SdcOptions {
    int q = 0;
    std::string mode = "receiver";  // receiver | two-sender
    std::string format = "csv";     // csv | json
    std::string output;
};

int cmd_points(const PointsOptions& opt, std::ostream& out, std::ostream& err);
int cmd_curve(const CurveOptions& opt, std::ostream& out, std::ostream& err);
int cmd_ratio(const RatioOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_sdc(const SdcOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace qregen::cli
