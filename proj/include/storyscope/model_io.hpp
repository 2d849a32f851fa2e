#pragma once

// Flat-file serialization of a trained classifier (vocabulary + model).
// The format is described in docs/model-format.md.

#include <charconv>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "storyscope/cross_validation.hpp"

namespace storyscope {

inline constexpr int kModelFormatVersion = 1;

namespace detail {

inline std::string fmt_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("cannot format number");
    return std::string(buf, end);
}

inline double parse_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::runtime_error("model file: bad number \"" + s + "\"");
    return v;
}

inline std::size_t parse_size(const std::string& s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::runtime_error("model file: bad integer \"" + s + "\"");
    return v;
}

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    return out;
}

inline std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace detail

inline Algorithm algorithm_of(const Model& m) {
    switch (m.index()) {
        case 0: return Algorithm::winnow;
        case 1: return Algorithm::naive_bayes;
        default: return Algorithm::svm;
    }
}

inline void save_classifier(std::ostream& out, const TrainedClassifier& tc) {
    using detail::fmt_double;
    const auto& vocab = tc.vocabulary;
    const auto& labels = model_labels(tc.model);
    out << "storyscope-model\t" << kModelFormatVersion << '\n';
    out << "algorithm\t" << algorithm_name(algorithm_of(tc.model)) << '\n';
    out << "labels\t" << labels.names[0] << '\t' << labels.names[1] << '\n';
    out << "positive\t" << labels.positive << '\n';
    out << "vocab_size\t" << vocab.size() << '\n';
    out << "vocab_k\t" << vocab.k() << '\n';
    out << "vocab_hash\t" << detail::hex64(vocab.hash()) << '\n';
    if (const auto* w = std::get_if<WinnowModel>(&tc.model)) {
        const auto& p = w->params();
        out << "param\talpha\t" << fmt_double(p.alpha) << '\n'
            << "param\tbeta\t" << fmt_double(p.beta) << '\n'
            << "param\ttheta_plus\t" << fmt_double(p.theta_plus) << '\n'
            << "param\ttheta_minus\t" << fmt_double(p.theta_minus) << '\n'
            << "param\titerations\t" << p.iterations << '\n'
            << "param\tinit_plus\t" << fmt_double(p.init_plus) << '\n'
            << "param\tinit_minus\t" << fmt_double(p.init_minus) << '\n';
    } else if (const auto* nb = std::get_if<NaiveBayesModel>(&tc.model)) {
        out << "param\tsmoothing\t" << fmt_double(nb->smoothing()) << '\n';
    } else if (const auto* svm = std::get_if<SvmModel>(&tc.model)) {
        out << "param\tC\t" << fmt_double(svm->params().C) << '\n'
            << "param\ttolerance\t" << fmt_double(svm->params().tolerance) << '\n';
    }
    out << "end_header\n";
    for (std::size_t i = 0; i < vocab.size(); ++i)
        out << "vocab\t" << i << '\t' << vocab.train_frequency(i) << '\t' << join(vocab.entry(i), " ") << '\n';
    if (const auto* w = std::get_if<WinnowModel>(&tc.model)) {
        for (std::size_t c = 0; c < 2; ++c)
            for (std::size_t f = 0; f < vocab.size(); ++f) {
                const auto& ww = w->weight(c, static_cast<FeatureIndex>(f));
                if (ww.touched)
                    out << "weight\t" << c << '\t' << f << '\t' << fmt_double(ww.plus) << '\t'
                        << fmt_double(ww.minus) << '\n';
            }
    } else if (const auto* nb = std::get_if<NaiveBayesModel>(&tc.model)) {
        for (std::size_t c = 0; c < 2; ++c) out << "prior\t" << c << '\t' << fmt_double(nb->log_prior(c)) << '\n';
        for (std::size_t c = 0; c < 2; ++c)
            for (std::size_t f = 0; f < vocab.size(); ++f)
                out << "loglik\t" << c << '\t' << f << '\t'
                    << fmt_double(nb->log_likelihood(c, static_cast<FeatureIndex>(f))) << '\n';
    } else if (const auto* svm = std::get_if<SvmModel>(&tc.model)) {
        out << "bias\t" << fmt_double(svm->bias()) << '\n';
        for (std::size_t f = 0; f < vocab.size(); ++f)
            if (svm->weights()[f] != 0.0) out << "w\t" << f << '\t' << fmt_double(svm->weights()[f]) << '\n';
    }
    out << "end\n";
}

inline TrainedClassifier load_classifier(std::istream& in) {
    using detail::parse_double;
    using detail::parse_size;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& msg) -> std::runtime_error {
        return std::runtime_error("model file line " + std::to_string(lineno) + ": " + msg);
    };
    auto next = [&]() -> std::vector<std::string> {
        if (!std::getline(in, line)) throw fail("unexpected end of file");
        ++lineno;
        return detail::split_tabs(line);
    };
    auto f = next();
    if (f.size() != 2 || f[0] != "storyscope-model") throw fail("not a storyscope model file");
    if (parse_size(f[1]) != static_cast<std::size_t>(kModelFormatVersion))
        throw fail("unsupported format version " + f[1]);

    std::string algo_name, hash;
    BinaryLabels labels;
    std::size_t vocab_size = 0, vocab_k = 0;
    std::map<std::string, std::string> params;
    while (true) {
        f = next();
        if (f[0] == "end_header") break;
        if (f[0] == "algorithm" && f.size() == 2) algo_name = f[1];
        else if (f[0] == "labels" && f.size() == 3) labels.names = {f[1], f[2]};
        else if (f[0] == "positive" && f.size() == 2) labels.positive = parse_size(f[1]);
        else if (f[0] == "vocab_size" && f.size() == 2) vocab_size = parse_size(f[1]);
        else if (f[0] == "vocab_k" && f.size() == 2) vocab_k = parse_size(f[1]);
        else if (f[0] == "vocab_hash" && f.size() == 2) hash = f[1];
        else if (f[0] == "param" && f.size() == 3) params[f[1]] = f[2];
        else throw fail("unexpected header record \"" + f[0] + "\"");
    }
    if (labels.positive > 1) throw fail("positive index must be 0 or 1");
    const Algorithm algo = parse_algorithm(algo_name);
    auto param = [&](const std::string& key) {
        auto it = params.find(key);
        if (it == params.end()) throw fail("missing parameter " + key);
        return parse_double(it->second);
    };

    std::vector<Ngram> entries(vocab_size);
    std::vector<std::size_t> freq(vocab_size);
    std::vector<std::vector<std::string>> body;
    while (true) {
        f = next();
        if (f[0] == "end") break;
        if (f[0] == "vocab") {
            if (f.size() != 4) throw fail("bad vocab record");
            const auto idx = parse_size(f[1]);
            if (idx >= vocab_size) throw fail("vocab index out of range");
            freq[idx] = parse_size(f[2]);
            std::istringstream toks(f[3]);
            Ngram g;
            for (std::string t; toks >> t;) g.push_back(t);
            entries[idx] = std::move(g);
        } else {
            body.push_back(std::move(f));
        }
    }
    Vocabulary vocab(std::move(entries), std::move(freq), vocab_k);
    if (detail::hex64(vocab.hash()) != hash) throw fail("vocabulary hash mismatch");

    auto feature = [&](const std::string& s) {
        const auto idx = parse_size(s);
        if (idx >= vocab_size) throw fail("feature index out of range");
        return static_cast<FeatureIndex>(idx);
    };
    auto cls = [&](const std::string& s) {
        const auto c = parse_size(s);
        if (c > 1) throw fail("class index out of range");
        return c;
    };

    switch (algo) {
        case Algorithm::winnow: {
            WinnowParams p;
            p.alpha = param("alpha");
            p.beta = param("beta");
            p.theta_plus = param("theta_plus");
            p.theta_minus = param("theta_minus");
            p.iterations = static_cast<std::size_t>(param("iterations"));
            p.init_plus = param("init_plus");
            p.init_minus = param("init_minus");
            WinnowModel m(labels, vocab_size, p);
            for (const auto& r : body) {
                if (r[0] != "weight" || r.size() != 5) throw fail("bad winnow record");
                m.set_weight(cls(r[1]), feature(r[2]), parse_double(r[3]), parse_double(r[4]));
            }
            return {std::move(vocab), Model{std::move(m)}};
        }
        case Algorithm::naive_bayes: {
            NaiveBayesModel m(labels, vocab_size, param("smoothing"));
            for (const auto& r : body) {
                if (r[0] == "prior" && r.size() == 3) m.set_log_prior(cls(r[1]), parse_double(r[2]));
                else if (r[0] == "loglik" && r.size() == 4)
                    m.set_log_likelihood(cls(r[1]), feature(r[2]), parse_double(r[3]));
                else throw fail("bad naive bayes record");
            }
            return {std::move(vocab), Model{std::move(m)}};
        }
        case Algorithm::svm: {
            SvmParams p;
            p.C = param("C");
            p.tolerance = param("tolerance");
            std::vector<double> w(vocab_size, 0.0);
            double bias = 0.0;
            for (const auto& r : body) {
                if (r[0] == "bias" && r.size() == 2) bias = parse_double(r[1]);
                else if (r[0] == "w" && r.size() == 3) w[feature(r[1])] = parse_double(r[2]);
                else throw fail("bad svm record");
            }
            return {std::move(vocab), Model{SvmModel(labels, std::move(w), bias, p)}};
        }
    }
    throw fail("unreachable");
}

}  // namespace storyscope
