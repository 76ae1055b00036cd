#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ldpc/tanner_graph.hpp"

namespace ldpc {

enum class DecisionRule { A, B };

struct DecoderConfig {
    int max_iterations = 50;
    DecisionRule decision_rule = DecisionRule::A;
    bool trace = false;
};

enum class DecodeStatus { Converged, FailedMaxIter, FixedPoint };

struct DecodeOutcome {
    DecodeStatus status = DecodeStatus::FailedMaxIter;
    std::vector<std::uint8_t> output;
    int iterations_used = 0;
    std::vector<int> residual_error_support;  // support of output (all-zero convention)
};

/// One snapshot per full iteration; var_to_chk/chk_to_var are indexed by edge
/// id (edges enumerated per variable, neighbor order).
struct MessageState {
    std::vector<std::uint8_t> var_to_chk;
    std::vector<std::uint8_t> chk_to_var;

    bool operator==(const MessageState&) const = default;
};

struct TraceEntry {
    MessageState messages;
    std::vector<std::uint8_t> estimate;
};

/// Gallager A for column-weight-three codes. Holds the flattened edge index
/// and scratch buffers so a single instance can run millions of decodes
/// without reallocating. One instance per thread; the graph itself is shared
/// read-only.
class Decoder {
public:
    Decoder(const TannerGraph& g, DecoderConfig cfg = {})
        : g_(&g), cfg_(cfg) {
        if (cfg.max_iterations < 1)
            throw std::invalid_argument("max_iterations must be >= 1");
        if (!is_column_weight_three(g))
            throw std::invalid_argument("Gallager A decision rules require column weight three");
        // Edge ids: edge k of variable v is v*3+k, neighbor order.
        edges_ = static_cast<int>(g.edge_count());
        chk_edge_offset_.resize(g.m + 1, 0);
        for (int c = 0; c < g.m; ++c)
            chk_edge_offset_[c + 1] = chk_edge_offset_[c] + g.chk_degree(c);
        chk_edge_ids_.resize(edges_);
        std::vector<int> fill(chk_edge_offset_.begin(), chk_edge_offset_.end() - 1);
        for (int v = 0; v < g.n; ++v)
            for (int k = 0; k < 3; ++k) {
                int c = g.var_adj[v][k];
                chk_edge_ids_[fill[c]++] = v * 3 + k;
            }
        vtc_.resize(edges_);
        vtc_prev_.resize(edges_);
        ctv_.resize(edges_);
        estimate_.resize(g.n);
    }

    const TannerGraph& graph() const { return *g_; }
    const DecoderConfig& config() const { return cfg_; }

    DecodeOutcome decode(const std::vector<std::uint8_t>& received) {
        return run(received, nullptr, nullptr);
    }

    /// Decode a pattern given by its support, without materializing the word
    /// at the call site.
    DecodeOutcome decode_support(const std::vector<int>& support) {
        received_buf_.assign(g_->n, 0);
        for (int v : support) {
            check_var_index(*g_, v);
            received_buf_[v] = 1;
        }
        return run(received_buf_, nullptr, nullptr);
    }

    DecodeOutcome decode_trace(const std::vector<std::uint8_t>& received,
                               std::vector<TraceEntry>& trace) {
        trace.clear();
        return run(received, &trace, nullptr);
    }

    /// True iff the variable-to-check messages repeat identically from one
    /// iteration to the next with the estimate equal to the received word.
    /// Detected by direct message-state comparison after one full iteration
    /// (iteration 1 sends the received values on all edges, so invariance of
    /// that state is invariance forever).
    bool is_fixed_point(const std::vector<std::uint8_t>& received) {
        bool fixed = false;
        run(received, nullptr, &fixed);
        return fixed;
    }

    bool is_fixed_point_support(const std::vector<int>& support) {
        received_buf_.assign(g_->n, 0);
        for (int v : support) {
            check_var_index(*g_, v);
            received_buf_[v] = 1;
        }
        return is_fixed_point(received_buf_);
    }

private:
    DecodeOutcome run(const std::vector<std::uint8_t>& received,
                      std::vector<TraceEntry>* trace, bool* fixed_point_query) {
        const TannerGraph& g = *g_;
        if (static_cast<int>(received.size()) != g.n)
            throw std::invalid_argument("decode: received length != n");

        DecodeOutcome out;
        if (is_codeword(g, received)) {
            // Received word already valid: converged before any iteration.
            out.status = DecodeStatus::Converged;
            out.output = received;
            out.iterations_used = 0;
            fill_support(out);
            if (fixed_point_query) *fixed_point_query = true;  // codewords are fixed points
            return out;
        }

        // First half of iteration 1: every variable sends its received value.
        for (int v = 0; v < g.n; ++v)
            vtc_[v * 3] = vtc_[v * 3 + 1] = vtc_[v * 3 + 2] = received[v];

        for (int iter = 1; iter <= cfg_.max_iterations; ++iter) {
            // Check update: c->v is the XOR of the other incoming messages.
            for (int c = 0; c < g.m; ++c) {
                std::uint8_t total = 0;
                for (int i = chk_edge_offset_[c]; i < chk_edge_offset_[c + 1]; ++i)
                    total ^= vtc_[chk_edge_ids_[i]];
                for (int i = chk_edge_offset_[c]; i < chk_edge_offset_[c + 1]; ++i) {
                    int e = chk_edge_ids_[i];
                    ctv_[e] = total ^ vtc_[e];
                }
            }

            // Per-iteration estimate from the configured decision rule.
            for (int v = 0; v < g.n; ++v) {
                std::uint8_t a = ctv_[v * 3], b = ctv_[v * 3 + 1], c2 = ctv_[v * 3 + 2];
                if (cfg_.decision_rule == DecisionRule::A)
                    estimate_[v] = (a == b && b == c2) ? a : received[v];
                else
                    estimate_[v] = static_cast<std::uint8_t>((a + b + c2) >= 2);
            }

            // Next variable-to-check messages: the common value of the other
            // two check messages if they agree, else the received value.
            std::swap(vtc_, vtc_prev_);
            for (int v = 0; v < g.n; ++v) {
                std::uint8_t a = ctv_[v * 3], b = ctv_[v * 3 + 1], c2 = ctv_[v * 3 + 2];
                std::uint8_t r = received[v];
                vtc_[v * 3] = (b == c2) ? b : r;
                vtc_[v * 3 + 1] = (a == c2) ? a : r;
                vtc_[v * 3 + 2] = (a == b) ? a : r;
            }

            if (trace)
                trace->push_back({MessageState{vtc_prev_, ctv_}, estimate_});

            if (fixed_point_query) {
                *fixed_point_query = (vtc_ == vtc_prev_) && (estimate_ == received);
                out.status = DecodeStatus::FixedPoint;
                out.output = received;
                out.iterations_used = iter;
                fill_support(out);
                return out;
            }

            if (is_codeword(g, estimate_)) {
                out.status = DecodeStatus::Converged;
                out.output = estimate_;
                out.iterations_used = iter;
                fill_support(out);
                return out;
            }

            if (vtc_ == vtc_prev_ && estimate_ == received) {
                // Messages iteration-invariant: the output is the input.
                out.status = DecodeStatus::FixedPoint;
                out.output = received;
                out.iterations_used = iter;
                fill_support(out);
                return out;
            }
        }

        out.status = DecodeStatus::FailedMaxIter;
        out.output = estimate_;
        out.iterations_used = cfg_.max_iterations;
        fill_support(out);
        return out;
    }

    void fill_support(DecodeOutcome& out) const {
        out.residual_error_support.clear();
        for (int v = 0; v < g_->n; ++v)
            if (out.output[v]) out.residual_error_support.push_back(v);
    }

    const TannerGraph* g_;
    DecoderConfig cfg_;
    int edges_ = 0;
    std::vector<int> chk_edge_offset_;
    std::vector<int> chk_edge_ids_;
    std::vector<std::uint8_t> vtc_, vtc_prev_, ctv_, estimate_;
    std::vector<std::uint8_t> received_buf_;
};

// Convenience free functions matching the class API.

inline DecodeOutcome gallager_a_decode(const TannerGraph& g,
                                       const std::vector<std::uint8_t>& received,
                                       const DecoderConfig& cfg = {}) {
    return Decoder(g, cfg).decode(received);
}

inline bool is_fixed_point(const TannerGraph& g, const std::vector<int>& support,
                           const DecoderConfig& cfg = {}) {
    return Decoder(g, cfg).is_fixed_point_support(support);
}

inline std::vector<TraceEntry> decode_trace(const TannerGraph& g,
                                            const std::vector<std::uint8_t>& received,
                                            const DecoderConfig& cfg = {}) {
    std::vector<TraceEntry> trace;
    Decoder(g, cfg).decode_trace(received, trace);
    return trace;
}

}  // namespace ldpc
