#include "output.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>
#include <ostream>

#include <unistd.h>

#include "generank/errors.hpp"

namespace generank::cli {

namespace fs = std::filesystem;

void write_atomically(const fs::path &path, const std::function<void(std::ostream &)> &fill) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        fill(out);
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw std::runtime_error("write to '" + tmp.string() + "' failed");
        }
    }
    fs::rename(tmp, path);
}

std::string sha256_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("SHA-256 unavailable");
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &len);
    static const char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string fixed(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

} // namespace

void write_roc_svg(std::ostream &out, const CvReport &report) {
    const double size = 400, left = 70, top = 40;
    auto px = [&](double x) { return fixed(left + x * size); };
    auto py = [&](double y) { return fixed(top + (1 - y) * size); };
    char auc[32];
    std::snprintf(auc, sizeof auc, "%.4f", report.auc);

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"510\" font-family=\"sans-serif\" "
           "font-size=\"13\">\n";
    out << "<rect width=\"520\" height=\"510\" fill=\"white\"/>\n";
    out << "<text x=\"" << px(0.5) << "\" y=\"24\" text-anchor=\"middle\">ROC curve (AUC " << auc << ", "
        << report.folds.size() << " folds)</text>\n";
    out << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\"" << py(0)
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0) << "\" y2=\"" << py(1)
        << "\" stroke=\"black\"/>\n";
    for (const double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        out << "<line x1=\"" << px(t) << "\" y1=\"" << py(0) << "\" x2=\"" << px(t) << "\" y2=\"" << fixed(top + size + 5)
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(t) << "\" y=\"" << fixed(top + size + 20) << "\" text-anchor=\"middle\">" << t
            << "</text>\n";
        out << "<line x1=\"" << fixed(left - 5) << "\" y1=\"" << py(t) << "\" x2=\"" << px(0) << "\" y2=\"" << py(t)
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(top + (1 - t) * size + 4)
            << "\" text-anchor=\"end\">" << t << "</text>\n";
    }
    out << "<text x=\"" << px(0.5) << "\" y=\"" << fixed(top + size + 45)
        << "\" text-anchor=\"middle\">1 - specificity</text>\n";
    out << "<text transform=\"translate(20," << fixed(top + size / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
        << "sensitivity</text>\n";
    out << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\"" << py(1)
        << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
    out << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < report.roc.size(); ++i) {
        if (i) out << ' ';
        out << px(report.roc[i].false_positive_rate) << ',' << py(report.roc[i].true_positive_rate);
    }
    out << "\"/>\n</svg>\n";
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace generank::cli
