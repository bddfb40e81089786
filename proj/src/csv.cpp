#include "qcycle/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcycle {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string scan_csv(const ScanResult& result) {
    std::ostringstream out;
    out << "param,qy_mean,qy_std,ne_mean,ne_std,np_mean,np_std,Q,eta\n";
    for (const ScanPoint& p : result.points) {
        out << num(p.param) << ',' << num(p.qy_mean) << ',' << num(p.qy_std) << ','
            << num(p.ne_mean) << ',' << num(p.ne_std) << ',' << num(p.np_mean) << ','
            << num(p.np_std) << ',' << num(p.q) << ',' << num(p.eta) << '\n';
    }
    return out.str();
}

std::string trajectory_csv(const TrajectoryResult& result) {
    std::ostringstream out;
    out << "t_us,x_nm,n1,n2,N1,N2,nL,nH,nA,nB,ne,Np\n";
    const TrajectorySeries& s = result.series;
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        out << num(s.t[i]) << ',' << num(s.x[i]);
        for (const auto& occ : s.occ)
            out << ',' << num(occ[i]);
        out << ',' << num(s.n_e[i]) << ',' << num(s.N_p[i]) << '\n';
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out)
        throw std::runtime_error("failed writing '" + path + "'");
}

std::string scan_plot_script(const std::string& csv_name) {
    std::ostringstream out;
    out << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set xlabel 'scan parameter'\n"
        << "set ylabel 'quantum yield'\n"
        << "plot '" << csv_name << "' using 1:2:3 with yerrorlines title 'QY', \\\n"
        << "     '' using 1:8 with linespoints title 'Q', \\\n"
        << "     '' using 1:9 with linespoints title 'eta'\n";
    return out.str();
}

std::string trajectory_plot_script(const std::string& csv_name) {
    std::ostringstream out;
    out << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set xlabel 't (us)'\n"
        << "plot '" << csv_name << "' using 1:2 with lines title 'x (nm)', \\\n"
        << "     '' using 1:11 with lines title 'n_e', \\\n"
        << "     '' using 1:12 with lines title 'N_p'\n";
    return out.str();
}

} // namespace qcycle
