#include "zxopt/verify.hpp"

#include <algorithm>
#include <cmath>

namespace zxopt {
namespace {

constexpr int kMaxQubits = 12;
constexpr int kMaxRank = 26;

using cplx = std::complex<double>;

struct Tens {
    std::vector<int> idx; // wire ids, idx[0] is the most significant bit
    std::vector<cplx> data;

    int rank() const { return static_cast<int>(idx.size()); }
};

Tens contract(const Tens& a, const Tens& b) {
    std::vector<int> shared;
    for (int i : a.idx)
        if (std::find(b.idx.begin(), b.idx.end(), i) != b.idx.end())
            shared.push_back(i);

    std::vector<int> a_free, b_free;
    for (int i : a.idx)
        if (std::find(shared.begin(), shared.end(), i) == shared.end())
            a_free.push_back(i);
    for (int i : b.idx)
        if (std::find(shared.begin(), shared.end(), i) == shared.end())
            b_free.push_back(i);

    Tens r;
    r.idx = a_free;
    r.idx.insert(r.idx.end(), b_free.begin(), b_free.end());
    if (r.rank() > kMaxRank)
        throw ZxError("diagram_tensor: contraction intermediate too large");
    r.data.assign(std::size_t{1} << r.rank(), cplx{0.0, 0.0});

    auto pos_of = [](const std::vector<int>& idx, int wire) {
        return static_cast<int>(std::find(idx.begin(), idx.end(), wire) - idx.begin());
    };
    // Precompute bit positions of each result/shared index inside a and b.
    const int na = a.rank(), nb = b.rank(), ns = static_cast<int>(shared.size());
    std::vector<int> a_bit_for_shared(ns), b_bit_for_shared(ns);
    for (int s = 0; s < ns; ++s) {
        a_bit_for_shared[s] = na - 1 - pos_of(a.idx, shared[s]);
        b_bit_for_shared[s] = nb - 1 - pos_of(b.idx, shared[s]);
    }
    const int nra = static_cast<int>(a_free.size()), nrb = static_cast<int>(b_free.size());
    std::vector<int> a_bit_for_free(nra), b_bit_for_free(nrb);
    for (int i = 0; i < nra; ++i)
        a_bit_for_free[i] = na - 1 - pos_of(a.idx, a_free[i]);
    for (int i = 0; i < nrb; ++i)
        b_bit_for_free[i] = nb - 1 - pos_of(b.idx, b_free[i]);

    const std::size_t n_res = r.data.size();
    const std::size_t n_sh = std::size_t{1} << ns;
    const int nr = r.rank();
    for (std::size_t res = 0; res < n_res; ++res) {
        cplx acc{0.0, 0.0};
        std::size_t base_a = 0, base_b = 0;
        for (int i = 0; i < nra; ++i)
            if (res >> (nr - 1 - i) & 1)
                base_a |= std::size_t{1} << a_bit_for_free[i];
        for (int i = 0; i < nrb; ++i)
            if (res >> (nr - 1 - nra - i) & 1)
                base_b |= std::size_t{1} << b_bit_for_free[i];
        for (std::size_t sh = 0; sh < n_sh; ++sh) {
            std::size_t ia = base_a, ib = base_b;
            for (int s = 0; s < ns; ++s) {
                if (sh >> s & 1) {
                    ia |= std::size_t{1} << a_bit_for_shared[s];
                    ib |= std::size_t{1} << b_bit_for_shared[s];
                }
            }
            acc += a.data[ia] * b.data[ib];
        }
        r.data[res] = acc;
    }
    return r;
}

Tens hadamard_node(int w1, int w2) {
    const double s = 1.0 / std::sqrt(2.0);
    Tens t;
    t.idx = {w1, w2};
    t.data = {cplx{s, 0}, cplx{s, 0}, cplx{s, 0}, cplx{-s, 0}};
    return t;
}

} // namespace

DenseUnitary DenseUnitary::identity(int n_qubits) {
    if (n_qubits > kMaxQubits)
        throw ZxError("unitary size cap exceeded");
    DenseUnitary u;
    u.n_qubits = n_qubits;
    u.m.assign((std::size_t{1} << n_qubits) * (std::size_t{1} << n_qubits), cplx{0, 0});
    for (std::size_t i = 0; i < u.dim(); ++i)
        u.at(i, i) = 1.0;
    return u;
}

DenseUnitary circuit_unitary(const Circuit& c) {
    if (c.n_qubits > kMaxQubits)
        throw ZxError("circuit_unitary: size cap exceeded");
    DenseUnitary u = DenseUnitary::identity(c.n_qubits);
    const std::size_t dim = u.dim();
    const int n = c.n_qubits;

    auto bit = [n](int q) { return std::size_t{1} << (n - 1 - q); };

    for (const Gate& g : c.gates) {
        switch (g.kind) {
        case GateKind::H: {
            const std::size_t mask = bit(g.q0);
            const double s = 1.0 / std::sqrt(2.0);
            for (std::size_t r = 0; r < dim; ++r) {
                if (r & mask)
                    continue;
                for (std::size_t col = 0; col < dim; ++col) {
                    const cplx a = u.at(r, col), b = u.at(r | mask, col);
                    u.at(r, col) = s * (a + b);
                    u.at(r | mask, col) = s * (a - b);
                }
            }
            break;
        }
        case GateKind::X: {
            const std::size_t mask = bit(g.q0);
            for (std::size_t r = 0; r < dim; ++r) {
                if (r & mask)
                    continue;
                for (std::size_t col = 0; col < dim; ++col)
                    std::swap(u.at(r, col), u.at(r | mask, col));
            }
            break;
        }
        case GateKind::Z:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::T:
        case GateKind::Tdg:
        case GateKind::Rz: {
            const std::size_t mask = bit(g.q0);
            const cplx e = std::polar(1.0, g.z_phase().radians());
            for (std::size_t r = 0; r < dim; ++r) {
                if (!(r & mask))
                    continue;
                for (std::size_t col = 0; col < dim; ++col)
                    u.at(r, col) *= e;
            }
            break;
        }
        case GateKind::Cnot: {
            const std::size_t cm = bit(g.q0), tm = bit(g.q1);
            for (std::size_t r = 0; r < dim; ++r) {
                if ((r & cm) && !(r & tm))
                    for (std::size_t col = 0; col < dim; ++col)
                        std::swap(u.at(r, col), u.at(r | tm, col));
            }
            break;
        }
        case GateKind::Cz: {
            const std::size_t am = bit(g.q0), bm = bit(g.q1);
            for (std::size_t r = 0; r < dim; ++r) {
                if ((r & am) && (r & bm))
                    for (std::size_t col = 0; col < dim; ++col)
                        u.at(r, col) = -u.at(r, col);
            }
            break;
        }
        }
    }
    return u;
}

DenseUnitary diagram_tensor(const ZxDiagram& d) {
    const int n = d.n_wires();
    if (n > kMaxQubits)
        throw ZxError("diagram_tensor: size cap exceeded");
    d.check_graph_like();

    int next_wire = 0;
    std::vector<Tens> nodes;
    // Per-spider port lists assembled first, then spider tensors created.
    std::vector<std::vector<int>> ports(d.vertex_bound());

    for (auto [u, v] : d.edges()) {
        const int w1 = next_wire++, w2 = next_wire++;
        ports[u].push_back(w1);
        ports[v].push_back(w2);
        nodes.push_back(hadamard_node(w1, w2));
    }

    std::vector<int> in_open(n), out_open(n);
    for (int w = 0; w < n; ++w) {
        int open = next_wire++;
        in_open[w] = open;
        if (d.input_hadamard(w)) {
            const int seg = next_wire++;
            nodes.push_back(hadamard_node(open, seg));
            ports[d.inputs()[w]].push_back(seg);
        } else {
            ports[d.inputs()[w]].push_back(open);
        }
        open = next_wire++;
        out_open[w] = open;
        if (d.output_hadamard(w)) {
            const int seg = next_wire++;
            nodes.push_back(hadamard_node(open, seg));
            ports[d.outputs()[w]].push_back(seg);
        } else {
            ports[d.outputs()[w]].push_back(open);
        }
    }

    for (Vertex v : d.vertices()) {
        if (d.phase(v).has_var())
            throw ZxError("diagram_tensor: unresolved phase variable");
        Tens t;
        t.idx = ports[v];
        if (t.rank() > kMaxRank)
            throw ZxError("diagram_tensor: spider arity too large");
        t.data.assign(std::size_t{1} << t.rank(), cplx{0, 0});
        t.data.front() = 1.0;
        t.data.back() = std::polar(1.0, d.phase(v).cliff.radians());
        nodes.push_back(std::move(t));
    }

    std::vector<int> open_order;
    for (int w = 0; w < n; ++w)
        open_order.push_back(out_open[w]);
    for (int w = 0; w < n; ++w)
        open_order.push_back(in_open[w]);

    // Greedy pairwise contraction, smallest resulting rank first.
    while (nodes.size() > 1) {
        int best_i = -1, best_j = -1, best_rank = 1 << 30;
        bool best_shares = false;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                int shared = 0;
                for (int w : nodes[i].idx)
                    if (std::find(nodes[j].idx.begin(), nodes[j].idx.end(), w) !=
                        nodes[j].idx.end())
                        ++shared;
                const int rank = nodes[i].rank() + nodes[j].rank() - 2 * shared;
                const bool shares = shared > 0;
                if ((shares && !best_shares) || (shares == best_shares && rank < best_rank)) {
                    best_rank = rank;
                    best_i = static_cast<int>(i);
                    best_j = static_cast<int>(j);
                    best_shares = shares;
                }
            }
        }
        Tens merged = contract(nodes[best_i], nodes[best_j]);
        nodes.erase(nodes.begin() + best_j);
        nodes[best_i] = std::move(merged);
    }

    Tens result = nodes.empty() ? Tens{{}, {cplx{1, 0}}} : std::move(nodes.front());

    // Permute result indices into [out_0..out_{n-1}, in_0..in_{n-1}].
    if (result.rank() != 2 * n)
        throw ZxError("diagram_tensor: open index mismatch");
    DenseUnitary u;
    u.n_qubits = n;
    u.m.assign(result.data.size(), cplx{0, 0});
    const int nr = result.rank();
    std::vector<int> bit_of(nr); // bit position in result.data for open_order[k]
    for (int k = 0; k < nr; ++k) {
        const auto it = std::find(result.idx.begin(), result.idx.end(), open_order[k]);
        if (it == result.idx.end())
            throw ZxError("diagram_tensor: lost open index");
        bit_of[k] = nr - 1 - static_cast<int>(it - result.idx.begin());
    }
    for (std::size_t src = 0; src < result.data.size(); ++src) {
        std::size_t dst = 0;
        for (int k = 0; k < nr; ++k)
            if (src >> bit_of[k] & 1)
                dst |= std::size_t{1} << (nr - 1 - k);
        u.m[dst] = result.data[src];
    }

    // Scalars are dropped in the diagram; renormalise to unitary scale.
    double fro = 0;
    for (const cplx& z : u.m)
        fro += std::norm(z);
    if (fro <= 0)
        throw ZxError("diagram_tensor: zero tensor");
    const double scale = std::sqrt(static_cast<double>(u.dim()) / fro);
    for (cplx& z : u.m)
        z *= scale;
    return u;
}

bool equal_up_to_global_phase(const DenseUnitary& a, const DenseUnitary& b, double tol) {
    if (a.n_qubits != b.n_qubits)
        throw ZxError("equal_up_to_global_phase: dimension mismatch");
    std::size_t ref = 0;
    double best = -1;
    for (std::size_t i = 0; i < b.m.size(); ++i) {
        if (std::abs(b.m[i]) > best) {
            best = std::abs(b.m[i]);
            ref = i;
        }
    }
    if (best <= tol)
        return false;
    cplx c = a.m[ref] / b.m[ref];
    const double mag = std::abs(c);
    if (mag <= tol)
        return false;
    c /= mag; // restrict to a unit scalar
    for (std::size_t i = 0; i < a.m.size(); ++i)
        if (std::abs(a.m[i] - c * b.m[i]) > tol)
            return false;
    return true;
}

} // namespace zxopt
