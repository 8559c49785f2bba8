#include "hpc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace hpc {

namespace {

constexpr int kCellW = 56;
constexpr int kCellH = 32;
constexpr int kLeft = 72;   // room for gamma labels
constexpr int kTop = 34;    // room for the panel title
constexpr int kBottom = 26; // room for N labels
constexpr int kGap = 28;

std::string risk_color(double risk) {
    // piecewise-linear green (0) -> yellow (1) -> red (2)
    auto lerp = [](int a, int b, double t) {
        return static_cast<int>(std::lround(a + (b - a) * t));
    };
    double r = std::clamp(risk, 0.0, 2.0);
    int cr, cg, cb;
    if (r <= 1.0) {
        cr = lerp(0x1a, 0xff, r);
        cg = lerp(0x98, 0xff, r);
        cb = lerp(0x50, 0xbf, r);
    } else {
        cr = lerp(0xff, 0xd7, r - 1.0);
        cg = lerp(0xff, 0x30, r - 1.0);
        cb = lerp(0xbf, 0x27, r - 1.0);
    }
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", cr, cg, cb);
    return buf;
}

std::string short_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

} // namespace

void write_phase_svg(std::span<const PhaseRow> rows, std::ostream& out) {
    std::vector<std::string> detectors;
    std::set<uint32_t> n_set;
    std::set<double> gamma_set;
    for (const PhaseRow& r : rows) {
        if (std::find(detectors.begin(), detectors.end(), r.detector) == detectors.end())
            detectors.push_back(r.detector);
        n_set.insert(r.n);
        gamma_set.insert(r.gamma);
    }
    std::sort(detectors.begin(), detectors.end());
    std::vector<uint32_t> ns(n_set.begin(), n_set.end());
    std::vector<double> gammas(gamma_set.rbegin(), gamma_set.rend()); // top = largest

    int grid_w = static_cast<int>(ns.size()) * kCellW;
    int grid_h = static_cast<int>(gammas.size()) * kCellH;
    int panel_h = kTop + grid_h + kBottom;
    int width = kLeft + grid_w + 16;
    int height = static_cast<int>(detectors.size()) * (panel_h + kGap);

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";

    for (size_t p = 0; p < detectors.size(); ++p) {
        int oy = static_cast<int>(p) * (panel_h + kGap);
        out << "<text x=\"" << kLeft << "\" y=\"" << oy + 18
            << "\" font-weight=\"bold\">" << detectors[p]
            << " risk over (N, gamma)</text>\n";

        std::map<std::pair<uint32_t, double>, const PhaseRow*> cells;
        for (const PhaseRow& r : rows)
            if (r.detector == detectors[p]) cells[{r.n, r.gamma}] = &r;

        for (size_t gi = 0; gi < gammas.size(); ++gi) {
            int y = oy + kTop + static_cast<int>(gi) * kCellH;
            out << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + kCellH / 2 + 4
                << "\" text-anchor=\"end\">" << short_g(gammas[gi]) << "</text>\n";
            for (size_t ni = 0; ni < ns.size(); ++ni) {
                auto it = cells.find({ns[ni], gammas[gi]});
                if (it == cells.end()) continue;
                const PhaseRow& r = *it->second;
                int x = kLeft + static_cast<int>(ni) * kCellW;
                std::string fill =
                    r.status == "ok" ? risk_color(r.risk) : std::string("#bbbbbb");
                out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCellW - 2
                    << "\" height=\"" << kCellH - 2 << "\" fill=\"" << fill
                    << "\" stroke=\"#444\"><title>" << r.detector << " N=" << r.n
                    << " kappa=" << r.kappa << " risk=" << format_g6(r.risk) << " ("
                    << r.status << ")</title></rect>\n";
                if (r.status == "ok")
                    out << "<text x=\"" << x + kCellW / 2 - 1 << "\" y=\""
                        << y + kCellH / 2 + 4 << "\" text-anchor=\"middle\">"
                        << short_g(r.risk) << "</text>\n";
            }
        }
        int labels_y = oy + kTop + grid_h + 16;
        for (size_t ni = 0; ni < ns.size(); ++ni)
            out << "<text x=\"" << kLeft + static_cast<int>(ni) * kCellW + kCellW / 2 - 1
                << "\" y=\"" << labels_y << "\" text-anchor=\"middle\">N=" << ns[ni]
                << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace hpc
