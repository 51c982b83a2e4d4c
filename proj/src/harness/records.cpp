#include "monosum/harness/records.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace monosum::harness {

namespace {

std::string join(const std::vector<std::int64_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

void write_records_csv(std::ostream& out, const std::vector<RatioRecord>& records) {
    out << "p,n,h,e,k,lambda,char_index,sum_re,sum_im,abs_sum,bound,ratio,branch,eval_ns\n";
    for (const auto& r : records) {
        out << r.p << ',' << r.n << ',' << r.h << ',' << join(r.e) << ',' << join(r.k) << ',' << r.lambda << ','
            << r.char_index << ',' << format_double(r.sum_re) << ',' << format_double(r.sum_im) << ','
            << format_double(r.abs_sum) << ',' << format_double(r.bound) << ',' << format_double(r.ratio) << ','
            << r.branch << ',' << r.eval_ns << '\n';
    }
}

void write_cells_csv(std::ostream& out, const std::vector<CellSummary>& cells) {
    out << "p,n,h,trials,max_ratio,mean_ratio,branch\n";
    for (const auto& c : cells)
        out << c.p << ',' << c.n << ',' << c.h << ',' << c.trials << ',' << format_double(c.max_ratio) << ','
            << format_double(c.mean_ratio) << ',' << c.branch << '\n';
}

void write_records_json(std::ostream& out, const std::vector<RatioRecord>& records,
                        const std::vector<CellSummary>& cells) {
    nlohmann::ordered_json doc;
    doc["records"] = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["p"] = r.p;
        j["n"] = r.n;
        j["h"] = r.h;
        j["e"] = r.e;
        j["k"] = r.k;
        j["lambda"] = r.lambda;
        j["char_index"] = r.char_index;
        j["sum_re"] = r.sum_re;
        j["sum_im"] = r.sum_im;
        j["abs_sum"] = r.abs_sum;
        j["bound"] = r.bound;
        j["ratio"] = r.ratio;
        j["branch"] = r.branch;
        j["eval_ns"] = r.eval_ns;
        doc["records"].push_back(std::move(j));
    }
    doc["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : cells) {
        nlohmann::ordered_json j;
        j["p"] = c.p;
        j["n"] = c.n;
        j["h"] = c.h;
        j["trials"] = c.trials;
        j["max_ratio"] = c.max_ratio;
        j["mean_ratio"] = c.mean_ratio;
        j["branch"] = c.branch;
        doc["cells"].push_back(std::move(j));
    }
    out << doc.dump(2) << '\n';
}

}  // namespace monosum::harness
