#pragma once

// Latent Dirichlet Allocation fit by collapsed Gibbs sampling.
//
// Each sweep visits documents in order and tokens in order, removes the
// token's current assignment and draws a new topic from
//
//   p(t) ~ (n_dt + alpha) * (n_tw + beta) / (n_t + V * beta)
//
// using Rng::uniform() against the running cumulative sum. Initial topics are
// Rng::index(T) per token in the same visiting order. theta and phi are point
// estimates from the final assignment:
//
//   theta_d(t) = (n_dt + alpha) / (N_d + T * alpha)
//   phi_t(w)   = (n_tw + beta)  / (n_t + V * beta)

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "storyscope/rng.hpp"
#include "storyscope/text.hpp"

namespace storyscope {

struct LdaDocument {
    std::string id;
    std::vector<std::string> words;
};

struct LdaParams {
    std::size_t topics = 50;
    std::size_t iterations = 2000;
    double alpha = 0.1;  // per topic; 5 / T at the default T
    double beta = 0.01;
    std::uint64_t seed = 0;

    void validate() const {
        if (topics < 1) throw std::invalid_argument("lda: need at least one topic");
        if (!(alpha > 0.0)) throw std::invalid_argument("lda: alpha must be > 0");
        if (!(beta > 0.0)) throw std::invalid_argument("lda: beta must be > 0");
    }
};

class TopicModel {
public:
    TopicModel() = default;

    // Builds the word index (sorted, so ids do not depend on input order) and
    // the initial random assignment. Documents without words are kept with a
    // uniform theta and listed in excluded_docs().
    TopicModel(const std::vector<LdaDocument>& docs, const LdaParams& params)
        : params_(params), rng_(params.seed) {
        params_.validate();
        if (docs.empty()) throw std::invalid_argument("lda: empty corpus");
        std::map<std::string, std::size_t> words;
        for (const auto& d : docs)
            for (const auto& w : d.words) words.emplace(w, 0);
        std::size_t next = 0;
        for (auto& [w, id] : words) {
            id = next++;
            vocab_.push_back(w);
        }
        for (const auto& d : docs) {
            doc_ids_.push_back(d.id);
            std::vector<std::uint32_t> ws;
            ws.reserve(d.words.size());
            for (const auto& w : d.words) ws.push_back(static_cast<std::uint32_t>(words[w]));
            if (ws.empty()) excluded_.push_back(d.id);
            doc_words_.push_back(std::move(ws));
        }
        if (excluded_.size() == docs.size()) throw std::invalid_argument("lda: no document has content words");
        allocate();
        for (std::size_t d = 0; d < doc_words_.size(); ++d) {
            z_[d].resize(doc_words_[d].size());
            for (std::size_t i = 0; i < doc_words_[d].size(); ++i) {
                const auto t = static_cast<std::uint32_t>(rng_.index(params_.topics));
                z_[d][i] = t;
                add(d, doc_words_[d][i], t, +1);
            }
        }
    }

    void sweep() {
        const std::size_t T = params_.topics;
        const double vbeta = static_cast<double>(vocab_.size()) * params_.beta;
        std::vector<double> cumulative(T);
        for (std::size_t d = 0; d < doc_words_.size(); ++d) {
            for (std::size_t i = 0; i < doc_words_[d].size(); ++i) {
                const auto w = doc_words_[d][i];
                add(d, w, z_[d][i], -1);
                double total = 0.0;
                for (std::size_t t = 0; t < T; ++t) {
                    total += (doc_topic_[d * T + t] + params_.alpha) *
                             (topic_word_[t * vocab_.size() + w] + params_.beta) /
                             (topic_total_[t] + vbeta);
                    cumulative[t] = total;
                }
                const double u = rng_.uniform() * total;
                std::size_t t = 0;
                while (t + 1 < T && cumulative[t] <= u) ++t;
                z_[d][i] = static_cast<std::uint32_t>(t);
                add(d, w, z_[d][i], +1);
            }
        }
        ++sweeps_;
    }

    void run(std::size_t iterations, const std::function<void(const TopicModel&)>& after_sweep = {}) {
        for (std::size_t it = 0; it < iterations; ++it) {
            sweep();
            if (after_sweep) after_sweep(*this);
        }
    }

    // True when every count table equals the aggregation of the assignments.
    bool counts_consistent() const {
        TopicModel fresh;
        fresh.params_ = params_;
        fresh.vocab_ = vocab_;
        fresh.doc_words_ = doc_words_;
        fresh.allocate();
        for (std::size_t d = 0; d < doc_words_.size(); ++d)
            for (std::size_t i = 0; i < doc_words_[d].size(); ++i) fresh.add(d, doc_words_[d][i], z_[d][i], +1);
        return fresh.doc_topic_ == doc_topic_ && fresh.topic_word_ == topic_word_ &&
               fresh.topic_total_ == topic_total_ && fresh.doc_total_ == doc_total_;
    }

    std::size_t topics() const { return params_.topics; }
    std::size_t vocab_size() const { return vocab_.size(); }
    std::size_t num_docs() const { return doc_ids_.size(); }
    std::size_t sweeps() const { return sweeps_; }
    const LdaParams& params() const { return params_; }
    const std::vector<std::string>& vocabulary() const { return vocab_; }
    const std::vector<std::string>& doc_ids() const { return doc_ids_; }
    const std::vector<std::string>& excluded_docs() const { return excluded_; }
    const std::vector<std::vector<std::uint32_t>>& assignments() const { return z_; }

    std::size_t doc_index(const std::string& id) const {
        auto it = std::find(doc_ids_.begin(), doc_ids_.end(), id);
        if (it == doc_ids_.end()) throw std::invalid_argument("document \"" + id + "\" is not in the topic model");
        return static_cast<std::size_t>(it - doc_ids_.begin());
    }

    std::vector<double> theta(std::size_t d) const {
        const std::size_t T = params_.topics;
        std::vector<double> out(T);
        const double denom = static_cast<double>(doc_total_.at(d)) + static_cast<double>(T) * params_.alpha;
        for (std::size_t t = 0; t < T; ++t) out[t] = (doc_topic_[d * T + t] + params_.alpha) / denom;
        return out;
    }

    std::vector<double> phi(std::size_t t) const {
        const std::size_t V = vocab_.size();
        std::vector<double> out(V);
        const double denom = static_cast<double>(topic_total_.at(t)) + static_cast<double>(V) * params_.beta;
        for (std::size_t w = 0; w < V; ++w) out[w] = (topic_word_[t * V + w] + params_.beta) / denom;
        return out;
    }

    std::uint32_t doc_topic_count(std::size_t d, std::size_t t) const { return doc_topic_.at(d * params_.topics + t); }
    std::uint32_t topic_word_count(std::size_t t, std::size_t w) const { return topic_word_.at(t * vocab_.size() + w); }
    std::uint32_t topic_total(std::size_t t) const { return topic_total_.at(t); }

    // Text state dump: parameters, vocabulary and every assignment. Loading
    // rebuilds the count tables from the assignments.
    void save(std::ostream& out) const {
        out << "storyscope-lda\t1\n";
        out << "topics\t" << params_.topics << '\n'
            << "iterations\t" << params_.iterations << '\n'
            << "sweeps\t" << sweeps_ << '\n'
            << "alpha\t" << fmt(params_.alpha) << '\n'
            << "beta\t" << fmt(params_.beta) << '\n'
            << "seed\t" << params_.seed << '\n'
            << "vocab\t" << vocab_.size() << '\n';
        for (const auto& w : vocab_) out << w << '\n';
        out << "docs\t" << doc_ids_.size() << '\n';
        for (std::size_t d = 0; d < doc_ids_.size(); ++d) {
            out << doc_ids_[d] << '\t' << doc_words_[d].size();
            for (std::size_t i = 0; i < doc_words_[d].size(); ++i) out << '\t' << doc_words_[d][i] << ':' << z_[d][i];
            out << '\n';
        }
    }

    static TopicModel load(std::istream& in) {
        TopicModel m;
        std::string line;
        auto expect = [&](const std::string& key) {
            if (!std::getline(in, line)) throw std::runtime_error("topic model file truncated");
            const auto tab = line.find('\t');
            if (tab == std::string::npos || line.substr(0, tab) != key)
                throw std::runtime_error("topic model file: expected \"" + key + "\"");
            return line.substr(tab + 1);
        };
        if (expect("storyscope-lda") != "1") throw std::runtime_error("unsupported topic model version");
        m.params_.topics = std::stoull(expect("topics"));
        m.params_.iterations = std::stoull(expect("iterations"));
        m.sweeps_ = std::stoull(expect("sweeps"));
        m.params_.alpha = std::stod(expect("alpha"));
        m.params_.beta = std::stod(expect("beta"));
        m.params_.seed = std::stoull(expect("seed"));
        m.params_.validate();
        const std::size_t V = std::stoull(expect("vocab"));
        for (std::size_t i = 0; i < V; ++i) {
            if (!std::getline(in, line)) throw std::runtime_error("topic model file: vocabulary truncated");
            m.vocab_.push_back(line);
        }
        const std::size_t D = std::stoull(expect("docs"));
        for (std::size_t d = 0; d < D; ++d) {
            if (!std::getline(in, line)) throw std::runtime_error("topic model file: documents truncated");
            std::istringstream row(line);
            std::string id, field;
            std::getline(row, id, '\t');
            std::getline(row, field, '\t');
            const std::size_t n = std::stoull(field);
            std::vector<std::uint32_t> ws, zs;
            for (std::size_t i = 0; i < n; ++i) {
                if (!std::getline(row, field, '\t')) throw std::runtime_error("topic model file: short row for " + id);
                const auto colon = field.find(':');
                const auto w = std::stoul(field.substr(0, colon));
                const auto t = std::stoul(field.substr(colon + 1));
                if (w >= V || t >= m.params_.topics) throw std::runtime_error("topic model file: id out of range");
                ws.push_back(static_cast<std::uint32_t>(w));
                zs.push_back(static_cast<std::uint32_t>(t));
            }
            m.doc_ids_.push_back(id);
            if (ws.empty()) m.excluded_.push_back(id);
            m.doc_words_.push_back(std::move(ws));
            m.z_.push_back(std::move(zs));
        }
        m.allocate();
        for (std::size_t d = 0; d < m.doc_words_.size(); ++d)
            for (std::size_t i = 0; i < m.doc_words_[d].size(); ++i) m.add(d, m.doc_words_[d][i], m.z_[d][i], +1);
        return m;
    }

private:
    static std::string fmt(double v) {
        std::ostringstream ss;
        ss.precision(17);
        ss << v;
        return ss.str();
    }

    void allocate() {
        const std::size_t T = params_.topics;
        doc_topic_.assign(doc_words_.size() * T, 0);
        topic_word_.assign(T * vocab_.size(), 0);
        topic_total_.assign(T, 0);
        doc_total_.assign(doc_words_.size(), 0);
        z_.resize(doc_words_.size());
    }

    void add(std::size_t d, std::uint32_t w, std::uint32_t t, int delta) {
        const std::size_t T = params_.topics;
        doc_topic_[d * T + t] += static_cast<std::uint32_t>(delta);
        topic_word_[t * vocab_.size() + w] += static_cast<std::uint32_t>(delta);
        topic_total_[t] += static_cast<std::uint32_t>(delta);
        doc_total_[d] += static_cast<std::uint32_t>(delta);
    }

    LdaParams params_;
    Rng rng_{0};
    std::vector<std::string> vocab_;
    std::vector<std::string> doc_ids_;
    std::vector<std::string> excluded_;
    std::vector<std::vector<std::uint32_t>> doc_words_;
    std::vector<std::vector<std::uint32_t>> z_;
    std::vector<std::uint32_t> doc_topic_;    // D x T
    std::vector<std::uint32_t> topic_word_;   // T x V
    std::vector<std::uint32_t> topic_total_;  // T
    std::vector<std::uint32_t> doc_total_;    // D
    std::size_t sweeps_ = 0;
};

inline TopicModel fit_lda(const std::vector<LdaDocument>& docs, const LdaParams& params,
                          const std::function<void(const TopicModel&)>& after_sweep = {}) {
    TopicModel m(docs, params);
    m.run(params.iterations, after_sweep);
    return m;
}

// The n highest-phi words of a topic; equal phi falls back to word order.
inline std::vector<std::string> top_words(const TopicModel& m, std::size_t topic, std::size_t n = 10) {
    if (topic >= m.topics()) throw std::out_of_range("top_words: topic out of range");
    const auto phi = m.phi(topic);
    std::vector<std::size_t> idx(phi.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const auto& vocab = m.vocabulary();
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) {
        if (phi[a] != phi[b]) return phi[a] > phi[b];
        return vocab[a] < vocab[b];
    });
    if (idx.size() > n) idx.resize(n);
    std::vector<std::string> out;
    for (auto i : idx) out.push_back(vocab[i]);
    return out;
}

}  // namespace storyscope
