#include "secrely/figures.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "secrely/errors.hpp"
#include "secrely/sweep.hpp"

namespace secrely {

namespace {

namespace fs = std::filesystem;

enum class Metric { PNonzero, Sop, Ergodic };

struct Series {
    std::string column;  // CSV column name
    std::string label;   // plot legend entry
    double rho;
    double avg_snr_se_db;
};

struct Figure {
    std::string name;
    Metric metric;
    std::string y_label;
    bool log_y;
    std::vector<Series> series;
};

std::string trim_number(double v) {
    std::ostringstream oss;
    oss << v;
    std::string s = oss.str();
    for (char& c : s) {
        if (c == '-') c = 'm';
        if (c == '.') c = 'p';
    }
    return s;
}

std::vector<Figure> figure_definitions() {
    const std::vector<double> rho_four = {0.0, 0.5, 0.9, 1.0};
    const std::vector<double> rho_capacity = {0.0, 0.5, 0.8, 1.0};
    const std::vector<double> se_three = {-5.0, 0.0, 5.0};

    const auto rho_series = [](const std::vector<double>& rhos, double se_db, const char* prefix) {
        std::vector<Series> out;
        for (double r : rhos) {
            std::ostringstream label;
            label << "rho = " << r;
            out.push_back({std::string(prefix) + "_rho_" + trim_number(r), label.str(), r, se_db});
        }
        return out;
    };
    const auto se_series = [&se_three](double rho, const char* prefix) {
        std::vector<Series> out;
        for (double se : se_three) {
            std::ostringstream label;
            label << "S-E SNR = " << se << " dB";
            out.push_back({std::string(prefix) + "_se_" + trim_number(se) + "db", label.str(), rho, se});
        }
        return out;
    };

    return {
        {"fig2", Metric::PNonzero, "probability of non-zero secrecy capacity", false,
         rho_series(rho_four, -5.0, "p_nonzero")},
        {"fig3", Metric::PNonzero, "probability of non-zero secrecy capacity", false,
         se_series(0.5, "p_nonzero")},
        {"fig4", Metric::Sop, "secrecy outage probability", true,
         rho_series(rho_four, 0.0, "sop")},
        {"fig5", Metric::Ergodic, "ergodic secrecy capacity [bits/s/Hz]", false,
         rho_series(rho_capacity, -5.0, "ergodic")},
        {"fig6", Metric::Ergodic, "ergodic secrecy capacity [bits/s/Hz]", false,
         se_series(0.5, "ergodic")},
    };
}

SweepSpec series_sweep(const Series& s) {
    SweepSpec spec;
    spec.axis = SweepAxis::AvgSnrSdDb;
    for (int db = -5; db <= 30; ++db) spec.grid.push_back(static_cast<double>(db));

    SystemConfig base;
    base.n_relays = 5;
    base.rho = s.rho;
    base.target_rate = 2.0;
    base.avg_snr_se = db_to_linear(s.avg_snr_se_db);
    base.rate_prefactor = RatePrefactor::Half;
    spec.base = base;
    // Combined relay-path means locked to half the corresponding direct-link
    // mean, re-derived at every grid point.
    spec.linkage = {{LinkTarget::GammaC, LinkSource::AvgSnrSd, 0.5},
                    {LinkTarget::GammaCe, LinkSource::AvgSnrSe, 0.5}};
    return spec;
}

double pick_metric(const SecrecyMetrics& m, Metric metric) {
    switch (metric) {
        case Metric::PNonzero: return m.p_nonzero;
        case Metric::Sop: return m.sop;
        case Metric::Ergodic: return m.ergodic_capacity;
    }
    return 0.0;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void write_figure(const fs::path& dir, const Figure& fig, std::vector<std::string>& written) {
    std::vector<std::vector<SweepResultRow>> columns;
    SweepOptions options;
    options.n_workers = 4;
    std::vector<double> grid;
    for (const Series& s : fig.series) {
        const SweepSpec spec = series_sweep(s);
        grid = spec.grid;
        columns.push_back(run_sweep(spec, options));
    }

    const fs::path csv_path = dir / (fig.name + ".csv");
    {
        std::ofstream out = open_out(csv_path);
        out << "avg_snr_sd_db,avg_snr_sd";
        for (const Series& s : fig.series) out << ',' << s.column;
        out << '\n';
        out << std::setprecision(17);
        for (size_t i = 0; i < grid.size(); ++i) {
            out << grid[i] << ',' << columns[0][i].axis_linear;
            for (const auto& rows : columns) out << ',' << pick_metric(rows[i].analytic, fig.metric);
            out << '\n';
        }
        if (!out) throw IoError("failed writing " + csv_path.string());
    }
    written.push_back(csv_path.string());

    const fs::path gp_path = dir / (fig.name + ".gp");
    {
        std::ofstream out = open_out(gp_path);
        out << "# Render with: gnuplot " << fig.name << ".gp\n";
        out << "set datafile separator ','\n";
        out << "set terminal pngcairo size 900,620\n";
        out << "set output '" << fig.name << ".png'\n";
        out << "set xlabel 'average S-D SNR [dB]'\n";
        out << "set ylabel '" << fig.y_label << "'\n";
        if (fig.log_y) out << "set logscale y\n";
        out << "set grid\n";
        out << "set key " << (fig.metric == Metric::Sop ? "bottom left" : "bottom right") << "\n";
        out << "plot ";
        for (size_t i = 0; i < fig.series.size(); ++i) {
            if (i > 0) out << ", \\\n     ";
            out << "'" << fig.name << ".csv' using 1:" << (i + 3)
                << " with linespoints title '" << fig.series[i].label << "'";
        }
        out << '\n';
        if (!out) throw IoError("failed writing " + gp_path.string());
    }
    written.push_back(gp_path.string());
}

}  // namespace

std::vector<std::string> write_figure_artifacts(const std::string& output_dir) {
    const fs::path dir(output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory: " + output_dir);
    }
    std::vector<std::string> written;
    for (const Figure& fig : figure_definitions()) {
        write_figure(dir, fig, written);
    }
    return written;
}

}  // namespace secrely
