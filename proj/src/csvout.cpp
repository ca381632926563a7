#include "risnoma/csvout.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "risnoma/errors.hpp"

namespace risnoma {

namespace {

std::string sig6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string csv_text(const std::vector<PointRow>& rows) {
    std::ostringstream os;
    os << "sweep_param,sweep_value,scheme,mean_lambda2,se_lambda2,mean_rate_bps,"
          "se_rate_bps,trials,mean_wall_s\n";
    for (const PointRow& r : rows) {
        os << r.param << ',' << sig6(r.value) << ',' << r.scheme << ',' << sig6(r.mean_lambda2)
           << ',' << sig6(r.se_lambda2) << ',' << sig6(r.mean_rate) << ',' << sig6(r.se_rate)
           << ',' << r.trials << ',' << sig6(r.mean_wall_s) << '\n';
    }
    return os.str();
}

void write_csv(const std::vector<PointRow>& rows, const std::string& path) {
    if (rows.empty()) throw IoError("write_csv: no results to write");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write csv: " + path);
    out << csv_text(rows);
    if (!out) throw IoError("csv write failed: " + path);
}

} // namespace risnoma
