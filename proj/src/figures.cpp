// SPDX-License-Identifier: MIT

#include "ngmzi/figures.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include "ngmzi/interferometer.hpp"
#include "ngmzi/sweep.hpp"

namespace ngmzi {

namespace {

const std::vector<std::pair<int, int>> kSixPairs = {{0, 1}, {0, 2}, {1, 0},
                                                    {2, 0}, {1, 1}, {2, 2}};

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        v[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * double(i) / double(count - 1);
    }
    return v;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IOError("figure: cannot write '" + path + "'");
    return out;
}

/// Baseline curves (vacuum kappa = 1/2 and thermal kappa = 1 closed
/// forms) against one swept variable.
void write_baseline_csv(const std::string& path, const std::string& var,
                        const std::vector<double>& xs, double fixed_r_sq,
                        double fixed_phi) {
    std::ofstream out = open_out(path);
    out << var << ",delta_phi_tmsv_rad,delta_phi_tmst_rad\n";
    for (double x : xs) {
        const double r_sq = (var == "r_sq") ? x : fixed_r_sq;
        const double phi = (var == "phi_rad") ? x : fixed_phi;
        const double lam = std::tanh(r_sq);
        out << format_number(x) << ','
            << format_number(phase_uncertainty_tmst(lam, 0.5, phi)) << ','
            << format_number(phase_uncertainty_tmst(lam, 1.0, phi)) << "\n";
    }
}

/// Long-format sweep CSV over the six heralding pairs (standard schema;
/// the thermal baseline is recoverable per row as
/// delta_phi_rad + merit_thermal).
void write_pairs_csv(const std::string& path, SweepConfig config) {
    config.mn_pairs = kSixPairs;
    config.axes.insert(config.axes.begin(), AxisSpec{"mn", {}});
    config.workers = 4;
    std::ofstream out = open_out(path);
    write_csv_header(out, false);
    run_sweep(config,
              [&](const SweepRecord& rec) { write_csv_record(out, rec, false); });
}

void write_series_stub(const std::string& path, const std::string& csv,
                       const std::string& xlabel, int xcol, int ycol,
                       const std::string& ylabel) {
    std::ofstream out = open_out(path);
    out << "# gnuplot stub: one curve per heralding pair (m,n), filtered by\n"
           "# the first two CSV columns; the thermal baseline is column 12\n"
           "# plus column 14 of any row.\n"
           "set datafile separator ','\n"
           "set key autotitle columnhead outside\n"
           "set xlabel '" << xlabel << "'\nset ylabel '" << ylabel << "'\n"
           "set yrange [0:30]\n"
           "plot \\\n";
    for (std::size_t i = 0; i < kSixPairs.size(); ++i) {
        const int m = kSixPairs[i].first, n = kSixPairs[i].second;
        out << "  '" << csv << "' using ($1==" << m << "&&$2==" << n
            << "?$" << xcol << ":1/0):" << ycol << " with lines title '("
            << m << "," << n << ")'";
        out << ", \\\n";
    }
    out << "  '" << csv << "' using " << xcol << ":($" << 12 << "+$" << 14
        << ") with lines title 'thermal baseline'\n";
}

void write_contour_stub(const std::string& path, const std::string& csv,
                        int zcol, const std::string& zlabel,
                        const std::string& levels, int grid) {
    std::ofstream out = open_out(path);
    out << "# gnuplot stub: fixed-" << zlabel << " contour curves in the\n"
           "# (tau, r_sq) plane, one sheet per heralding pair; adjust the\n"
           "# pair filter in the using clause.\n"
           "set datafile separator ','\n"
           "set contour base\nunset surface\nset view map\n"
           "set dgrid3d " << grid << "," << grid << "\n"
           "set cntrparam levels discrete " << levels << "\n"
           "set xlabel 'tau'\nset ylabel 'r_sq'\n"
           "splot '" << csv << "' using ($1==1&&$2==1?$8:1/0):5:" << zcol
        << " with lines title '" << zlabel << " (1,1)'\n";
}

void write_probability_stub(const std::string& path, const std::string& csv,
                            int grid) {
    std::ofstream out = open_out(path);
    out << "# gnuplot stub: success probability over the (tau, r_sq) plane\n"
           "# (column 13), one sheet per heralding pair; adjust the filter.\n"
           "set datafile separator ','\n"
           "set view map\nset dgrid3d " << grid << "," << grid << "\n"
           "set xlabel 'tau'\nset ylabel 'r_sq'\n"
           "splot '" << csv << "' using ($1==1&&$2==1?$8:1/0):5:13 "
           "with pm3d title 'P (1,1)'\n";
}

SweepConfig grid_config(double kappa, int grid) {
    SweepConfig config;
    config.axes.push_back(AxisSpec{"kappa", {kappa}});
    config.axes.push_back(AxisSpec{"phi", {0.01}});
    config.axes.push_back(AxisSpec{"tau", linspace(0.02, 0.98, grid)});
    config.axes.push_back(AxisSpec{"r_sq", linspace(0.05, 2.0, grid)});
    return config;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {
        "fig3a", "fig3b", "fig4", "fig5", "fig6",
        "fig7-left", "fig7-right", "fig8-left", "fig8-right"};
    return ids;
}

std::vector<std::string> figure_command(const std::string& id,
                                        const std::string& outdir) {
    bool known = false;
    for (const std::string& k : figure_ids()) known = known || (k == id);
    if (!known) throw ConfigError("figure: unknown id '" + id + "'");

    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) throw IOError("figure: cannot create '" + outdir + "'");
    const std::string csv = outdir + "/" + id + ".csv";
    const std::string stub = outdir + "/" + id + ".gp";
    constexpr int kContourGrid = 41;

    if (id == "fig3a") {
        // Baselines against squeezing at phi = 0.01.
        write_baseline_csv(csv, "r_sq", linspace(0.05, 4.0, 80), 0.0, 0.01);
        std::ofstream out = open_out(stub);
        out << "set datafile separator ','\nset key autotitle columnhead\n"
               "set xlabel 'r_sq'\nset ylabel 'delta_phi_rad'\n"
               "set yrange [0:40]\n"
               "plot 'fig3a.csv' using 1:2 with lines, '' using 1:3 with "
               "lines\n";
    } else if (id == "fig3b") {
        // Baselines against phase at r_sq = 1.
        write_baseline_csv(csv, "phi_rad", linspace(0.01, 3.13, 157), 1.0,
                           0.0);
        std::ofstream out = open_out(stub);
        out << "set datafile separator ','\nset key autotitle columnhead\n"
               "set xlabel 'phi_rad'\nset ylabel 'delta_phi_rad'\n"
               "set yrange [0:40]\n"
               "plot 'fig3b.csv' using 1:2 with lines, '' using 1:3 with "
               "lines\n";
    } else if (id == "fig4") {
        SweepConfig config;
        config.axes.push_back(AxisSpec{"kappa", {1.0}});
        config.axes.push_back(AxisSpec{"tau", {0.9}});
        config.axes.push_back(AxisSpec{"phi", {0.01}});
        config.axes.push_back(AxisSpec{"r_sq", linspace(0.05, 3.0, 80)});
        write_pairs_csv(csv, config);
        write_series_stub(stub, id + ".csv", "r_sq", 5, 12,
                          "delta_phi_rad");
    } else if (id == "fig5") {
        SweepConfig config;
        config.axes.push_back(AxisSpec{"kappa", {1.0}});
        config.axes.push_back(AxisSpec{"r_sq", {1.0}});
        config.axes.push_back(AxisSpec{"phi", {0.01}});
        config.axes.push_back(AxisSpec{"tau", linspace(0.5, 0.9999, 80)});
        write_pairs_csv(csv, config);
        write_series_stub(stub, id + ".csv", "tau", 8, 12, "delta_phi_rad");
    } else if (id == "fig6") {
        SweepConfig config;
        config.axes.push_back(AxisSpec{"kappa", {1.0}});
        config.axes.push_back(AxisSpec{"r_sq", {1.0}});
        config.axes.push_back(AxisSpec{"tau", {0.9}});
        config.axes.push_back(AxisSpec{"phi", linspace(0.01, 3.13, 157)});
        write_pairs_csv(csv, config);
        write_series_stub(stub, id + ".csv", "phi_rad", 9, 12,
                          "delta_phi_rad");
    } else if (id == "fig7-left") {
        write_pairs_csv(csv, grid_config(0.5, kContourGrid));
        write_probability_stub(stub, id + ".csv", kContourGrid);
    } else if (id == "fig7-right") {
        write_pairs_csv(csv, grid_config(0.5, kContourGrid));
        write_contour_stub(stub, id + ".csv", 15, "merit_vacuum",
                           "0.0, 0.1, 0.5, 1, 2, 3", kContourGrid);
    } else if (id == "fig8-left") {
        write_pairs_csv(csv, grid_config(1.0, kContourGrid));
        write_probability_stub(stub, id + ".csv", kContourGrid);
    } else if (id == "fig8-right") {
        write_pairs_csv(csv, grid_config(1.0, kContourGrid));
        write_contour_stub(stub, id + ".csv", 14, "merit_thermal",
                           "0, 1, 5, 20, 50, 100", kContourGrid);
    }
    return {csv, stub};
}

}  // namespace ngmzi
