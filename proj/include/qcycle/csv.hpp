#pragma once

#include <string>

#include "qcycle/scan.hpp"
#include "qcycle/trajectory.hpp"

namespace qcycle {

/// Scan table, one row per grid point:
/// param,qy_mean,qy_std,ne_mean,ne_std,np_mean,np_std,Q,eta
std::string scan_csv(const ScanResult& result);

/// Sampled trajectory table:
/// t_us,x_nm,n1,n2,N1,N2,nL,nH,nA,nB,ne,Np
std::string trajectory_csv(const TrajectoryResult& result);

void write_text_file(const std::string& path, const std::string& content);

/// Small gnuplot script that plots a scan or trajectory CSV written next to
/// it.
std::string scan_plot_script(const std::string& csv_name);
std::string trajectory_plot_script(const std::string& csv_name);

} // namespace qcycle
