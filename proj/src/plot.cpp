#include "solarband/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "solarband/error.hpp"
#include "solarband/normality.hpp"

namespace solarband {
namespace {

constexpr std::string_view kModule = "metrics_report";
constexpr double kWidth = 1200.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape_xml(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Maps data coordinates onto the plot area.
struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const {
    return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

class Svg {
 public:
  explicit Svg(const std::string& title) {
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
         << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << " " << num(kHeight) << "\">\n"
         << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
         << "\" fill=\"white\"/>\n";
    if (!title.empty()) {
      out_ << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
           << "font-family=\"sans-serif\" font-size=\"16\">" << escape_xml(title) << "</text>\n";
    }
  }

  void axes(const Frame& f, const std::string& x_lo, const std::string& x_hi, const std::string& y_label) {
    out_ << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
         << num(kWidth - kLeft - kRight) << "\" height=\"" << num(kHeight - kTop - kBottom)
         << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    text(kLeft, kHeight - kBottom + 20, "start", x_lo);
    text(kWidth - kRight, kHeight - kBottom + 20, "end", x_hi);
    text(kLeft - 6, f.py(f.y1) + 4, "end", num(f.y1));
    text(kLeft - 6, f.py(f.y0) + 4, "end", num(f.y0));
    text(kLeft - 6, (kTop + kHeight - kBottom) / 2, "end", y_label);
  }

  void text(double x, double y, const char* anchor, const std::string& s) {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor
         << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_xml(s) << "</text>\n";
  }

  void polyline(const std::string& cls, const std::vector<std::pair<double, double>>& pts,
                const char* colour, bool dashed) {
    if (pts.empty()) return;
    out_ << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << colour
         << "\" stroke-width=\"1\"" << (dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out_ << (i ? " " : "") << num(pts[i].first) << "," << num(pts[i].second);
    }
    out_ << "\"/>\n";
  }

  void bar(double x, double y, double w, double h) {
    out_ << "<rect class=\"bar\" x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
         << "\" height=\"" << num(h) << "\" fill=\"blue\" fill-opacity=\"0.6\" stroke=\"none\"/>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
};

// Emits one polyline per run of defined values within [lo, hi).
void draw_track(Svg& svg, const Frame& frame, const std::string& cls, const char* colour, bool dashed,
                std::size_t lo, std::size_t hi, const std::function<std::optional<double>(std::size_t)>& at) {
  std::vector<std::pair<double, double>> run;
  for (std::size_t k = lo; k < hi; ++k) {
    const auto v = at(k);
    if (v) {
      run.emplace_back(frame.px(static_cast<double>(k)), frame.py(*v));
    } else {
      svg.polyline(cls, run, colour, dashed);
      run.clear();
    }
  }
  svg.polyline(cls, run, colour, dashed);
}

void check_alignment(const IrradianceSeries& s, const ForecastTrack* f, const BandTrack* b) {
  if (f && (f->start != s.start() || f->size() != s.size())) {
    throw Error(ErrorCode::TrackMismatch, kModule, "forecast track does not match series");
  }
  if (b && (b->start != s.start() || b->size() != s.size())) {
    throw Error(ErrorCode::TrackMismatch, kModule, "band track does not match series");
  }
}

// Index range [lo, hi) covered by the request.
std::pair<std::size_t, std::size_t> index_range(const IrradianceSeries& s, const PlotRequest& req) {
  if (req.kind != PlotKind::Zoom && !req.from && !req.to) return {0, s.size()};
  if (req.kind == PlotKind::Zoom && (!req.from || !req.to)) {
    throw Error(ErrorCode::EmptyRange, kModule, "zoom needs both --from and --to");
  }
  const std::int64_t n = static_cast<std::int64_t>(s.size());
  const std::int64_t a = req.from ? std::max<std::int64_t>(0, *req.from - s.start()) : 0;
  const std::int64_t b = req.to ? std::min<std::int64_t>(n - 1, *req.to - s.start()) : n - 1;
  if (a > b || a >= n || b < 0) {
    throw Error(ErrorCode::EmptyRange, kModule, "requested range holds no samples");
  }
  return {static_cast<std::size_t>(a), static_cast<std::size_t>(b + 1)};
}

std::string render_time(const IrradianceSeries& s, const ForecastTrack* f, const BandTrack* b,
                        const PlotRequest& req) {
  const auto [lo, hi] = index_range(s, req);
  double y_max = 1.0;
  for (std::size_t k = lo; k < hi; ++k) {
    if (s[k]) y_max = std::max(y_max, *s[k]);
    if (f && f->predicted[k]) y_max = std::max(y_max, *f->predicted[k]);
    if (b && b->upper[k]) y_max = std::max(y_max, *b->upper[k]);
  }
  const Frame frame{static_cast<double>(lo), static_cast<double>(std::max(hi - 1, lo + 1)), 0.0,
                    y_max * 1.05};

  Svg svg(req.title);
  svg.axes(frame, format_timestamp(s.time_at(lo)), format_timestamp(s.time_at(hi - 1)), "W/m2");
  if (b) {
    draw_track(svg, frame, "band-lower", "black", true, lo, hi, [&](std::size_t k) { return b->lower[k]; });
    draw_track(svg, frame, "band-upper", "black", true, lo, hi, [&](std::size_t k) { return b->upper[k]; });
  }
  draw_track(svg, frame, "measured", "blue", false, lo, hi, [&](std::size_t k) { return s[k]; });
  if (f) {
    draw_track(svg, frame, "predicted", "red", false, lo, hi, [&](std::size_t k) { return f->predicted[k]; });
  }
  return svg.finish();
}

std::string render_histogram(const IrradianceSeries& s, const ForecastTrack* f, const PlotRequest& req) {
  if (!f) throw Error(ErrorCode::InvalidArgument, kModule, "histogram needs a forecast track");
  const auto [lo, hi] = index_range(s, req);
  const DaylightMask mask = daylight_mask(f->realized, req.eps_day);
  std::vector<double> diff;
  for (std::size_t k = lo; k < hi; ++k) {
    if (mask[k] && f->defined(k)) diff.push_back(*f->realized[k] - *f->predicted[k]);
  }
  if (diff.empty()) throw Error(ErrorCode::EmptyRange, kModule, "no daylight forecast errors in range");
  const Histogram h = diff_histogram(diff, req.bins);

  double y_max = 1.0;
  for (const auto c : h.counts) y_max = std::max(y_max, static_cast<double>(c));
  for (const auto& [x, y] : h.curve) y_max = std::max(y_max, y);
  const double x_hi = h.width > 0.0 ? h.lo + h.width * static_cast<double>(h.counts.size()) : h.lo + 1.0;
  const Frame frame{h.lo, x_hi, 0.0, y_max * 1.05};

  Svg svg(req.title);
  svg.axes(frame, num(h.lo) + " W/m2", num(x_hi) + " W/m2", "count");
  const double bin_px = frame.px(h.lo + (x_hi - h.lo) / static_cast<double>(h.counts.size())) - frame.px(h.lo);
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double x = frame.px(h.lo + (x_hi - h.lo) * static_cast<double>(i) / static_cast<double>(h.counts.size()));
    const double top = frame.py(static_cast<double>(h.counts[i]));
    svg.bar(x, top, bin_px, frame.py(0.0) - top);
  }
  std::vector<std::pair<double, double>> curve;
  for (const auto& [x, y] : h.curve) curve.emplace_back(frame.px(x), frame.py(y));
  svg.polyline("normal-fit", curve, "red", false);
  return svg.finish();
}

}  // namespace

std::string render_plot(const IrradianceSeries& series, const ForecastTrack* forecast,
                        const BandTrack* band, const PlotRequest& request) {
  check_alignment(series, forecast, band);
  if (request.kind == PlotKind::Histogram) return render_histogram(series, forecast, request);
  return render_time(series, forecast, band, request);
}

std::string emit_plot(const IrradianceSeries& series, const ForecastTrack* forecast,
                      const BandTrack* band, const PlotRequest& request,
                      const std::filesystem::path& out) {
  std::string svg = render_plot(series, forecast, band, request);
  write_text_file(out, svg);
  return svg;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::Io, kModule, "cannot open '" + path.string() + "' for writing");
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!file) throw Error(ErrorCode::Io, kModule, "write failed for '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::Io, kModule, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

}  // namespace solarband
