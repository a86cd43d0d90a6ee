#include "rabisym/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace rabisym::io
{

std::string format_value(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content)
{
    namespace fs = std::filesystem;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.flush())
            throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string scan_to_csv(const SpectrumScan& scan)
{
    std::ostringstream out;
    out << "g,level_index,energy_rescaled,parity\n";
    for (size_t p = 0; p < scan.g_grid.size(); ++p)
        for (size_t l = 0; l < scan.levels[p].size(); ++l)
            out << format_value(scan.g_grid[p]) << ',' << l << ','
                << format_value(scan.levels[p][l]) << ',' << scan.labels[p][l] << '\n';
    return out.str();
}

std::string crossings_to_json(const std::vector<CrossingEvent>& events)
{
    std::ostringstream out;
    out << "[\n";
    for (size_t i = 0; i < events.size(); ++i)
    {
        const auto& e = events[i];
        out << "  {\"pair\": [" << e.level_lo << ", " << e.level_hi << "], "
            << "\"g_star\": " << format_value(e.g_star) << ", "
            << "\"min_gap\": " << format_value(e.min_gap) << ", "
            << "\"kind\": \"" << (e.is_true ? "true" : "avoided") << "\"}"
            << (i + 1 < events.size() ? "," : "") << '\n';
    }
    out << "]\n";
    return out.str();
}

std::string coeff_table_to_json(const CoeffTable& table, const ModelParams& params)
{
    std::ostringstream out;
    out << "{\n  \"N\": " << table.n_bias << ",\n  \"params\": {"
        << "\"delta\": " << format_value(params.delta) << ", "
        << "\"epsilon\": " << format_value(params.epsilon) << ", "
        << "\"g\": " << format_value(params.g) << ", "
        << "\"omega\": " << format_value(params.omega) << ", "
        << "\"beta\": " << format_value(params.beta()) << "},\n"
        << "  \"residual\": " << format_value(table.residual) << ",\n"
        << "  \"nullity\": " << table.nullity << ",\n  \"entries\": [\n";
    size_t i = 0;
    for (const auto& [key, value] : table.entries)
    {
        const auto [e, n, m] = key;
        out << "    {\"elem\": \"" << elem_name(e) << "\", \"n\": " << n << ", \"m\": " << m
            << ", \"value\": " << format_value(value) << "}"
            << (++i < table.entries.size() ? "," : "") << '\n';
    }
    out << "  ]\n}\n";
    return out.str();
}

CoeffTable coeff_table_from_json(const std::string& text)
{
    const auto doc = nlohmann::json::parse(text);
    CoeffTable t;
    t.n_bias = doc.at("N").get<int>();
    if (doc.contains("residual"))
        t.residual = doc["residual"].get<double>();
    if (doc.contains("nullity"))
        t.nullity = doc["nullity"].get<int>();
    for (const auto& e : doc.at("entries"))
        t.set(elem_from_name(e.at("elem").get<std::string>().at(0)), e.at("n").get<int>(),
              e.at("m").get<int>(), e.at("value").get<double>());
    return t;
}

std::string jsquare_to_json(const JSquarePoly& poly, const std::vector<double>& analytic)
{
    std::ostringstream out;
    out << "{\n  \"N\": " << poly.n_bias << ",\n  \"degree\": " << poly.coeffs.size() - 1
        << ",\n  \"coeffs\": [";
    for (size_t i = 0; i < poly.coeffs.size(); ++i)
        out << (i ? ", " : "") << format_value(poly.coeffs[i]);
    out << "],\n  \"residual\": " << format_value(poly.residual)
        << ",\n  \"max_offdiag\": " << format_value(poly.max_offdiag)
        << ",\n  \"fitted_states\": " << poly.fitted_states;
    if (!analytic.empty())
    {
        out << ",\n  \"analytic\": [";
        for (size_t i = 0; i < analytic.size(); ++i)
            out << (i ? ", " : "") << format_value(analytic[i]);
        out << "],\n  \"max_abs_error\": ";
        double err = 0.0;
        for (size_t i = 0; i < analytic.size() && i < poly.coeffs.size(); ++i)
            err = std::max(err, std::abs(analytic[i] - poly.coeffs[i]));
        out << format_value(err);
    }
    out << "\n}\n";
    return out.str();
}

namespace
{

const char* label_color(int label)
{
    if (label > 0)
        return "#1f4fd8"; // positive parity
    if (label < 0)
        return "#d82f2f"; // negative parity
    return "#9a9a9a";
}

} // namespace

std::string scan_to_svg(const SpectrumScan& scan, int width, int height)
{
    const int margin = 50;
    double ymin = 1e300, ymax = -1e300;
    for (const auto& pt : scan.levels)
        for (double e : pt)
        {
            ymin = std::min(ymin, e);
            ymax = std::max(ymax, e);
        }
    if (!(ymax > ymin))
    {
        ymin -= 1.0;
        ymax += 1.0;
    }
    const double xmin = scan.g_grid.front();
    const double xmax = scan.g_grid.back();
    auto px = [&](double g) {
        return margin + (g - xmin) / (xmax - xmin) * (width - 2 * margin);
    };
    auto py = [&](double e) {
        return height - margin - (e - ymin) / (ymax - ymin) * (height - 2 * margin);
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
        << width - margin << "\" y2=\"" << height - margin
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
        << "\" font-size=\"13\" text-anchor=\"middle\">g</text>\n";
    out << "<text x=\"14\" y=\"" << height / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << height / 2 << ")\">(E + 1/2) / beta</text>\n";

    size_t n_levels = 0;
    for (const auto& pt : scan.levels)
        n_levels = std::max(n_levels, pt.size());

    // one polyline per contiguous same-parity stretch of each level
    for (size_t lvl = 0; lvl < n_levels; ++lvl)
    {
        size_t p = 0;
        while (p < scan.g_grid.size())
        {
            if (scan.levels[p].size() <= lvl)
            {
                ++p;
                continue;
            }
            const int label = scan.labels[p][lvl];
            std::ostringstream pts;
            size_t q = p;
            while (q < scan.g_grid.size() && scan.levels[q].size() > lvl &&
                   scan.labels[q][lvl] == label)
            {
                pts << px(scan.g_grid[q]) << ',' << py(scan.levels[q][lvl]) << ' ';
                ++q;
            }
            if (q < scan.g_grid.size() && scan.levels[q].size() > lvl)
                pts << px(scan.g_grid[q]) << ',' << py(scan.levels[q][lvl]) << ' ';
            out << "<polyline fill=\"none\" stroke=\"" << label_color(label)
                << "\" stroke-width=\"1.2\" points=\"" << pts.str() << "\"/>\n";
            p = q;
        }
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace rabisym::io
