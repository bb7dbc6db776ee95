#include "miniant/metrics.hpp"

#include <sstream>

#include "miniant/format.hpp"

namespace miniant {

namespace {

const MetricPanel& split_of(const ModelReport& r, int s) {
    switch (s) {
    case 0: return r.train;
    case 1: return r.test;
    default: return r.validation;
    }
}

MetricPanel& split_of(ModelReport& r, int s) {
    switch (s) {
    case 0: return r.train;
    case 1: return r.test;
    default: return r.validation;
    }
}

std::string pad(const std::string& s, std::size_t width) {
    if (s.size() >= width) return s + ' ';
    return s + std::string(width - s.size(), ' ');
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

} // namespace

std::string render_report_csv(const std::vector<ModelReport>& reports) {
    std::string out = "model,split,mae,mse,rmse,r2,rmspe,mape\n";
    for (const auto& r : reports) {
        for (int s = 0; s < 3; ++s) {
            const MetricPanel& p = split_of(r, s);
            out += r.model;
            out += ',';
            out += kSplitNames[s];
            for (double v : {p.mae, p.mse, p.rmse, p.r2, p.rmspe, p.mape}) {
                out += ',';
                out += format_fixed(v, 4);
            }
            out += '\n';
        }
    }
    return out;
}

std::vector<ModelReport> parse_report_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != "model,split,mae,mse,rmse,r2,rmspe,mape")
        throw std::invalid_argument("report csv: bad header");

    std::vector<ModelReport> reports;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 8)
            throw std::invalid_argument("report csv: expected 8 fields, got " +
                                        std::to_string(f.size()));
        ModelReport* rep = nullptr;
        for (auto& r : reports)
            if (r.model == f[0]) rep = &r;
        if (!rep) {
            reports.push_back(ModelReport{f[0], {}, {}, {}});
            rep = &reports.back();
        }
        int s = -1;
        for (int k = 0; k < 3; ++k)
            if (f[1] == kSplitNames[k]) s = k;
        if (s < 0) throw std::invalid_argument("report csv: unknown split '" + f[1] + "'");
        MetricPanel& p = split_of(*rep, s);
        p.mae = parse_double(f[2]);
        p.mse = parse_double(f[3]);
        p.rmse = parse_double(f[4]);
        p.r2 = parse_double(f[5]);
        p.rmspe = parse_double(f[6]);
        p.mape = parse_double(f[7]);
    }
    return reports;
}

std::string render_report_table(const std::vector<ModelReport>& reports) {
    static const char* kTitles[3] = {"Training data", "Testing data", "Validation data"};
    std::ostringstream out;
    for (int s = 0; s < 3; ++s) {
        out << kTitles[s] << "\n";
        out << "  " << pad("Model", 16) << pad("MAE", 10) << pad("MSE", 10) << pad("RMSE", 10)
            << pad("R2", 10) << pad("RMSPE", 10) << pad("MAPE", 10) << "\n";
        for (const auto& r : reports) {
            const MetricPanel& p = split_of(r, s);
            out << "  " << pad(r.model, 16);
            for (double v : {p.mae, p.mse, p.rmse, p.r2, p.rmspe, p.mape})
                out << pad(format_fixed(v, 4), 10);
            out << "\n";
        }
        out << "\n";
    }
    return out.str();
}

} // namespace miniant
