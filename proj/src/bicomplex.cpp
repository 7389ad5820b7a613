#include "chom/bicomplex.hpp"

#include <stdexcept>

namespace chom {

namespace {

int mod_parity(int c) { return ((c % 2) + 2) % 2; }

} // namespace

BicomplexWindow::BicomplexWindow(const CyclicModule& m, int cmin, int cmax)
    : m_(m), cmin_(cmin), cmax_(cmax), D_(m.D()) {
    if (cmin_ > cmax_)
        throw std::invalid_argument("BicomplexWindow: empty column range");

    b_.resize(D_ + 1);
    minus_bp_.resize(D_ + 1);
    oml_.resize(D_ + 1);
    nrm_.resize(D_ + 1);
    for (int q = 0; q <= D_; ++q) {
        const int d = m_.dim(q);
        SparseMatrix lam = (q % 2 == 0) ? m_.t[q] : m_.t[q] * Rat(-1);
        oml_[q] = SparseMatrix::identity(d) - lam;
        SparseMatrix nrm(d, d);
        SparseMatrix pw = SparseMatrix::identity(d);
        for (int i = 0; i <= q; ++i) {
            nrm = nrm + pw;
            pw = lam * pw;
        }
        nrm_[q] = std::move(nrm);
        if (q >= 1) {
            SparseMatrix b(m_.dim(q - 1), d), bp(m_.dim(q - 1), d);
            Rat sign(1);
            for (int i = 0; i <= q; ++i) {
                b = b + m_.d(q, i) * sign;
                if (i < q)
                    bp = bp + m_.d(q, i) * sign;
                sign = -sign;
            }
            b_[q] = std::move(b);
            minus_bp_[q] = bp * Rat(-1);
        } else {
            b_[q] = SparseMatrix(0, d);
            minus_bp_[q] = SparseMatrix(0, d);
        }
    }

    // the defining identities of the bicomplex, checked exactly
    for (int q = 1; q <= D_; ++q) {
        if (b_[q - 1].rows() > 0 && !(b_[q - 1] * b_[q]).is_zero())
            throw std::logic_error("BicomplexWindow: b^2 != 0");
        if (minus_bp_[q - 1].rows() > 0 && !(minus_bp_[q - 1] * minus_bp_[q]).is_zero())
            throw std::logic_error("BicomplexWindow: b'^2 != 0");
        if (b_[q] * oml_[q] != oml_[q - 1] * (minus_bp_[q] * Rat(-1)))
            throw std::logic_error("BicomplexWindow: b(1-lambda) != (1-lambda)b'");
        if ((minus_bp_[q] * Rat(-1)) * nrm_[q] != nrm_[q - 1] * b_[q])
            throw std::logic_error("BicomplexWindow: b'N != Nb");
    }
    for (int q = 0; q <= D_; ++q)
        if (!(oml_[q] * nrm_[q]).is_zero() || !(nrm_[q] * oml_[q]).is_zero())
            throw std::logic_error("BicomplexWindow: (1-lambda)N != 0");

    // the full-window total complex squares to zero
    total(cmin_, cmax_).chain.validate();
}

const SparseMatrix& BicomplexWindow::vertical(int c, int q) const {
    return mod_parity(c) == 0 ? b_[q] : minus_bp_[q];
}

const SparseMatrix& BicomplexWindow::horizontal(int c, int q) const {
    // out of column c into c-1: 1-lambda lands in even columns, N in odd
    return mod_parity(c - 1) == 0 ? oml_[q] : nrm_[q];
}

bool BicomplexWindow::Total::has(int total_degree) const {
    int i = index_of(total_degree);
    return i >= 0 && i <= chain.top();
}

int BicomplexWindow::Total::dim(int total_degree) const {
    return has(total_degree) ? chain.dims[index_of(total_degree)] : 0;
}

BicomplexWindow::Total BicomplexWindow::total(int c0, int c1) const {
    if (c0 < cmin_ || c1 > cmax_ || c0 > c1)
        throw std::invalid_argument("BicomplexWindow::total: bad column range");
    Total t;
    t.c0 = c0;
    t.c1 = c1;
    t.rowD = D_;
    const int nmax = c1 + D_;
    const int count = nmax - c0 + 1;
    t.chain.dims.assign(count, 0);
    t.chain.d.assign(count, SparseMatrix());
    t.offset.resize(count);

    for (int n = c0; n <= nmax; ++n) {
        int idx = t.index_of(n);
        int off = 0;
        for (int c = std::max(c0, n - D_); c <= std::min(c1, n); ++c) {
            t.offset[idx][c] = off;
            off += m_.dim(n - c);
        }
        t.chain.dims[idx] = off;
    }
    for (int n = c0 + 1; n <= nmax; ++n) {
        int idx = t.index_of(n);
        SparseMatrix d(t.chain.dims[idx - 1], t.chain.dims[idx]);
        for (const auto& [c, off] : t.offset[idx]) {
            const int q = n - c;
            if (q >= 1 && t.offset[idx - 1].count(c)) {
                SparseMatrix v = vertical(c, q);
                d.insert_block(t.offset[idx - 1].at(c), off, v);
            }
            if (c - 1 >= c0 && t.offset[idx - 1].count(c - 1)) {
                SparseMatrix h = horizontal(c, q);
                d.insert_block(t.offset[idx - 1].at(c - 1), off, h);
            }
        }
        t.chain.d[idx] = std::move(d);
    }
    return t;
}

std::vector<int> BicomplexWindow::column_homology_dims(int c) const {
    ChainComplex col;
    col.dims = m_.sim.dims;
    col.d.resize(D_ + 1);
    for (int q = 1; q <= D_; ++q)
        col.d[q] = vertical(c, q);
    std::vector<int> out;
    for (int q = 0; q <= D_ - 1; ++q)
        out.push_back(col.homology(q).dim);
    return out;
}

int BicomplexWindow::row_homology_dim(int q, int c0, int c1, int c) const {
    if (c <= c0 || c >= c1)
        throw std::invalid_argument("row_homology_dim: need an interior column");
    const SparseMatrix& din = horizontal(c + 1, q);
    const SparseMatrix& dout = horizontal(c, q);
    return homology_at(din, dout).dim;
}

CyclicHomology::CyclicHomology(const CyclicModule& m)
    : m_(m), Dv_(m.D()), cmax_(m.D() + 1), win_(m, 0, m.D() + 1) {
    cc_ = win_.total(0, cmax_);
    quot_ = win_.total(1, cmax_);
    // column 0 padded to the cc index range
    moore_.dims.assign(cc_.chain.dims.size(), 0);
    moore_.d.assign(cc_.chain.dims.size(), SparseMatrix());
    for (int n = 0; n <= Dv_; ++n)
        moore_.dims[n] = m_.dim(n);
    for (int n = 1; n <= Dv_; ++n)
        moore_.d[n] = win_.vertical(0, n);
    for (size_t n = 1; n < moore_.d.size(); ++n)
        if (moore_.d[n].rows() == 0 && moore_.d[n].cols() == 0)
            moore_.d[n] = SparseMatrix(moore_.dims[n - 1], moore_.dims[n]);
}

void CyclicHomology::check_range(int n) const {
    if (n < 0 || n > max_certified())
        throw std::out_of_range("CyclicHomology: degree " + std::to_string(n) +
                                " outside the certified range [0, " +
                                std::to_string(max_certified()) + "]");
}

const HomologyData& CyclicHomology::hh_data(int n) {
    check_range(n);
    auto it = hh_cache_.find(n);
    if (it == hh_cache_.end())
        it = hh_cache_.emplace(n, moore_.homology(n)).first;
    return it->second;
}

const HomologyData& CyclicHomology::hc_data(int n) {
    check_range(n);
    auto it = hc_cache_.find(n);
    if (it == hc_cache_.end())
        it = hc_cache_.emplace(n, cc_.chain.homology(cc_.index_of(n))).first;
    return it->second;
}

const HomologyData& CyclicHomology::quot_data(int n) {
    auto it = quot_cache_.find(n);
    if (it == quot_cache_.end())
        it = quot_cache_.emplace(n, quot_.chain.homology(quot_.index_of(n))).first;
    return it->second;
}

int CyclicHomology::hh_dim(int n) { return hh_data(n).dim; }
int CyclicHomology::hc_dim(int n) { return hc_data(n).dim; }

SparseMatrix CyclicHomology::s_chain(int n) {
    // drop columns 0 and 1, reindex c -> c-2
    SparseMatrix f(cc_.dim(n - 2), cc_.dim(n));
    for (const auto& [c, off] : cc_.offset[cc_.index_of(n)]) {
        if (c < 2)
            continue;
        const auto& tgt = cc_.offset[cc_.index_of(n - 2)];
        auto it = tgt.find(c - 2);
        if (it == tgt.end())
            continue;
        for (int j = 0; j < m_.dim(n - c); ++j)
            f.set(it->second + j, off + j, Rat(1));
    }
    return f;
}

SparseMatrix CyclicHomology::i_chain(int n) {
    SparseMatrix f(cc_.dim(n), m_.dim(n));
    int off = cc_.offset[cc_.index_of(n)].at(0);
    for (int j = 0; j < m_.dim(n); ++j)
        f.set(off + j, j, Rat(1));
    return f;
}

SparseMatrix CyclicHomology::s_matrix(int n) {
    check_range(n);
    if (n < 2)
        return SparseMatrix(0, hc_dim(n));
    const SparseMatrix dst_dout =
        cc_.index_of(n - 2) >= 1 ? cc_.chain.d[cc_.index_of(n - 2)]
                                 : SparseMatrix(0, cc_.dim(n - 2));
    return induced_map(s_chain(n), hc_data(n), hc_data(n - 2), dst_dout);
}

SparseMatrix CyclicHomology::i_matrix(int n) {
    check_range(n);
    const SparseMatrix dst_dout =
        cc_.index_of(n) >= 1 ? cc_.chain.d[cc_.index_of(n)] : SparseMatrix(0, cc_.dim(n));
    return induced_map(i_chain(n), hh_data(n), hc_data(n), dst_dout);
}

SparseMatrix CyclicHomology::b_matrix(int n) {
    check_range(n);
    if (n < 1)
        return SparseMatrix(hh_dim(n), 0);

    // snake of 0 -> column 0 -> Tot(cc) -> Tot(cols >= 1) -> 0 at degree n+1,
    // then the identification H_{n+1}(cols >= 1) ~ HC_{n-1} by dropping the
    // acyclic column 1 and shifting two columns
    ShortExactSeq ses;
    ses.sub = moore_;
    ses.mid = cc_.chain;
    ses.quot = quot_.chain;
    // quot_ starts at total degree 1: pad to the cc range
    ChainComplex quot_padded;
    quot_padded.dims.assign(cc_.chain.dims.size(), 0);
    quot_padded.d.assign(cc_.chain.dims.size(), SparseMatrix());
    for (size_t i = 0; i < quot_.chain.dims.size(); ++i) {
        size_t j = i + 1; // total degree of quot index i
        if (j < quot_padded.dims.size())
            quot_padded.dims[j] = quot_.chain.dims[i];
    }
    for (size_t j = 1; j < quot_padded.dims.size(); ++j) {
        int qi = static_cast<int>(j) - 1; // quot chain index of total degree j
        if (qi >= 1 && qi <= quot_.chain.top())
            quot_padded.d[j] = quot_.chain.d[qi];
        else
            quot_padded.d[j] = SparseMatrix(quot_padded.dims[j - 1], quot_padded.dims[j]);
    }
    ses.quot = quot_padded;

    ChainMap incl, proj;
    incl.f.resize(cc_.chain.dims.size());
    proj.f.resize(cc_.chain.dims.size());
    for (size_t i = 0; i < cc_.chain.dims.size(); ++i) {
        int nn = static_cast<int>(i);
        SparseMatrix inc(cc_.chain.dims[i], moore_.dims[i]);
        if (nn <= Dv_ && cc_.offset[i].count(0)) {
            int off = cc_.offset[i].at(0);
            for (int j = 0; j < m_.dim(nn); ++j)
                inc.set(off + j, j, Rat(1));
        }
        incl.f[i] = std::move(inc);
        SparseMatrix pr(quot_padded.dims[i], cc_.chain.dims[i]);
        if (i >= 1) {
            int qi = static_cast<int>(i) - 1;
            // block offsets of quot degree i are cc offsets without column 0
            for (const auto& [c, off] : cc_.offset[i])
                if (c >= 1) {
                    int qoff = quot_.offset[qi].at(c);
                    for (int j = 0; j < m_.dim(nn - c); ++j)
                        pr.set(qoff + j, off + j, Rat(1));
                }
        }
        proj.f[i] = std::move(pr);
    }
    ses.incl = incl;
    ses.proj = proj;

    // connecting at degree n+1 (H_{n+1}(quot) -> H_n(col 0) = HH_n)
    HomologyData hq = quot_padded.homology(n + 1);
    const HomologyData& hsub = hh_data(n);
    SparseMatrix del = connecting_map(ses, n + 1, hq, hsub);

    // rho: quot -> cc shifted by -2 (drop column 1)
    SparseMatrix rho(cc_.dim(n - 1), quot_padded.dims[n + 1]);
    {
        int qi = n; // quot chain index of total degree n+1
        for (const auto& [c, off] : quot_.offset[qi]) {
            if (c < 2)
                continue;
            const auto& tgt = cc_.offset[cc_.index_of(n - 1)];
            auto it = tgt.find(c - 2);
            if (it == tgt.end())
                continue;
            for (int j = 0; j < m_.dim(n + 1 - c); ++j)
                rho.set(it->second + j, off + j, Rat(1));
        }
    }
    const SparseMatrix dst_dout = cc_.index_of(n - 1) >= 1
                                      ? cc_.chain.d[cc_.index_of(n - 1)]
                                      : SparseMatrix(0, cc_.dim(n - 1));
    SparseMatrix rho_star = induced_map(rho, hq, hc_data(n - 1), dst_dout);
    if (rho_star.rows() != rho_star.cols() || rank_of(rho_star) != rho_star.rows())
        throw std::logic_error("b_matrix: column-1 identification failed to invert");
    return del * inverse(rho_star);
}

SBIReport sbi(const CyclicModule& m) {
    CyclicHomology eng(m);
    SBIReport rep;
    rep.D = m.D();
    rep.max_degree = eng.max_certified();

    for (int n = 0; n <= rep.max_degree; ++n) {
        rep.hh_dims.push_back(eng.hh_dim(n));
        rep.hc_dims.push_back(eng.hc_dim(n));
        rep.S.push_back(eng.s_matrix(n));
        rep.I.push_back(eng.i_matrix(n));
        rep.B.push_back(eng.b_matrix(n));
    }
    if (rep.max_degree >= 1) {
        // one modest column depth for the HC^- side of the report
        int w = std::max(1, (rep.max_degree + 1) / 2);
        HCMinusReport hm = hc_minus(m, w);
        rep.hcm_min = hm.min_degree;
        rep.hcm_max = hm.max_degree;
        rep.hcm_dims = hm.dims;
    }

    auto node = [&](int n, const std::string& name, const SparseMatrix& into,
                    const SparseMatrix& outof, int dim_here) {
        SBINode nd;
        nd.degree = n;
        nd.node = name;
        nd.composite_zero = (outof * into).is_zero();
        nd.rank_exact = rank_of(into) == dim_here - rank_of(outof);
        rep.nodes.push_back(nd);
        if (!nd.composite_zero || !nd.rank_exact)
            rep.all_exact = false;
    };

    for (int n = 0; n <= rep.max_degree; ++n) {
        // at HH_n:  HC_{n-1} --B--> HH_n --I--> HC_n
        node(n, "HH", rep.B[n], rep.I[n], rep.hh_dims[n]);
        // at HC_n:  HH_n --I--> HC_n --S--> HC_{n-2}
        node(n, "HC", rep.I[n], rep.S[n], rep.hc_dims[n]);
        // at HC_{n-2}:  HC_n --S--> HC_{n-2} --B--> HH_{n-1}
        if (n >= 2)
            node(n, "HC-2", rep.S[n], rep.B[n - 1], rep.hc_dims[n - 2]);
    }
    return rep;
}

HCMinusReport hc_minus(const CyclicModule& m, int depth_w) {
    if (depth_w < 1)
        throw std::invalid_argument("hc_minus: depth must be >= 1");
    HCMinusReport rep;
    rep.W = depth_w;
    rep.D = m.D();

    const int cmax = m.D() + 1;
    BicomplexWindow win(m, -2 * depth_w, cmax);
    auto ccm = win.total(-2 * depth_w, 0);
    auto cp = win.total(-2 * depth_w, cmax);
    auto qp = win.total(1, cmax);

    // row truncation cannot reach degrees n with n + 1 + 2W <= D
    rep.min_degree = -2 * depth_w;
    rep.max_degree = m.D() - 1 - 2 * depth_w;
    if (rep.max_degree < rep.min_degree)
        throw std::invalid_argument("hc_minus: depth too large for this truncation");

    CyclicHomology eng(m);

    for (int n = rep.min_degree; n <= rep.max_degree; ++n) {
        HomologyData h = ccm.chain.homology(ccm.index_of(n));
        rep.dims.push_back(h.dim);

        // connecting HC_{n-1} -> HC^-_n out of 0 -> CC^- -> CP -> CP/CC^- -> 0
        if (n - 1 >= 0 && n - 1 <= eng.max_certified() && cp.has(n + 1)) {
            ShortExactSeq ses;
            ses.sub = ccm.chain;
            ses.mid = cp.chain;
            // pad sub and quot to cp's index range
            ChainComplex sub_p, quot_p;
            const size_t len = cp.chain.dims.size();
            sub_p.dims.assign(len, 0);
            sub_p.d.assign(len, SparseMatrix());
            quot_p.dims.assign(len, 0);
            quot_p.d.assign(len, SparseMatrix());
            for (size_t i = 0; i < len; ++i) {
                int deg = cp.degree_of(static_cast<int>(i));
                if (ccm.has(deg))
                    sub_p.dims[i] = ccm.dim(deg);
                if (qp.has(deg))
                    quot_p.dims[i] = qp.dim(deg);
            }
            for (size_t i = 1; i < len; ++i) {
                int deg = cp.degree_of(static_cast<int>(i));
                sub_p.d[i] = (ccm.has(deg) && ccm.index_of(deg) >= 1)
                                 ? ccm.chain.d[ccm.index_of(deg)]
                                 : SparseMatrix(sub_p.dims[i - 1], sub_p.dims[i]);
                quot_p.d[i] = (qp.has(deg) && qp.index_of(deg) >= 1)
                                  ? qp.chain.d[qp.index_of(deg)]
                                  : SparseMatrix(quot_p.dims[i - 1], quot_p.dims[i]);
            }
            ses.sub = sub_p;
            ses.quot = quot_p;
            ChainMap incl, proj;
            incl.f.resize(len);
            proj.f.resize(len);
            for (size_t i = 0; i < len; ++i) {
                int deg = cp.degree_of(static_cast<int>(i));
                SparseMatrix inc(cp.chain.dims[i], sub_p.dims[i]);
                SparseMatrix pr(quot_p.dims[i], cp.chain.dims[i]);
                if (cp.has(deg))
                    for (const auto& [c, off] : cp.offset[cp.index_of(deg)]) {
                        if (c <= 0 && ccm.has(deg)) {
                            int soff = ccm.offset[ccm.index_of(deg)].at(c);
                            for (int j = 0; j < m.dim(deg - c); ++j)
                                inc.set(off + j, soff + j, Rat(1));
                        }
                        if (c >= 1 && qp.has(deg)) {
                            int qoff = qp.offset[qp.index_of(deg)].at(c);
                            for (int j = 0; j < m.dim(deg - c); ++j)
                                pr.set(qoff + j, off + j, Rat(1));
                        }
                    }
                incl.f[i] = std::move(inc);
                proj.f[i] = std::move(pr);
            }
            ses.incl = incl;
            ses.proj = proj;

            HomologyData hq = quot_p.homology(cp.index_of(n + 1));
            SparseMatrix del = connecting_map(ses, cp.index_of(n + 1), hq, h);

            // identify H_{n+1}(quot) with HC_{n-1} (drop column 1, shift -2)
            SparseMatrix rho(eng.cc().dim(n - 1), quot_p.dims[cp.index_of(n + 1)]);
            if (qp.has(n + 1)) {
                for (const auto& [c, off] : qp.offset[qp.index_of(n + 1)]) {
                    if (c < 2)
                        continue;
                    const auto& tgt = eng.cc().offset[eng.cc().index_of(n - 1)];
                    auto it = tgt.find(c - 2);
                    if (it == tgt.end())
                        continue;
                    for (int j = 0; j < m.dim(n + 1 - c); ++j)
                        rho.set(it->second + j, off + j, Rat(1));
                }
            }
            const auto& hcd = eng.hc_data(n - 1);
            const SparseMatrix dst_dout =
                eng.cc().index_of(n - 1) >= 1
                    ? eng.cc().chain.d[eng.cc().index_of(n - 1)]
                    : SparseMatrix(0, eng.cc().dim(n - 1));
            SparseMatrix rho_star = induced_map(rho, hq, hcd, dst_dout);
            if (rho_star.rows() != rho_star.cols() || rank_of(rho_star) != rho_star.rows())
                throw std::logic_error("hc_minus: column-1 identification failed");
            SparseMatrix from_hc = del * inverse(rho_star);
            int r = rank_of(from_hc);
            rep.from_hc_rank.push_back(r);
            rep.iso_from_hc.push_back(r == h.dim && r == hcd.dim);
        } else {
            rep.from_hc_rank.push_back(-1);
            rep.iso_from_hc.push_back(false);
        }
    }
    return rep;
}

HPReport hp(CyclicHomology& engine, int window) {
    HPReport rep;
    rep.D = engine.D();
    rep.window = window;
    for (int parity = 0; parity <= 1; ++parity) {
        ParityTower pt;
        pt.parity = parity;
        for (int n = parity; n <= engine.max_certified(); n += 2) {
            pt.degrees.push_back(n);
            pt.hc_dims.push_back(engine.hc_dim(n));
        }
        Tower t;
        t.dims = pt.hc_dims;
        for (size_t i = 0; i + 1 < pt.degrees.size(); ++i)
            t.maps.push_back(engine.s_matrix(pt.degrees[i + 1]));

        bool all_zero = !t.maps.empty();
        for (const auto& mp : t.maps)
            if (!mp.is_zero())
                all_zero = false;

        pt.enough_stages = static_cast<int>(pt.degrees.size()) >= window + 2;
        if (pt.enough_stages) {
            pt.limit = tower_limit(t, window);
            pt.flat = pt.limit.stabilized;
            for (int d : pt.limit.image_dims)
                if (d != pt.limit.image_dims.front())
                    pt.flat = false;
        } else if (all_zero && t.stages() >= 2) {
            // every composite is zero, so the images are zero at every
            // stage regardless of depth
            pt.enough_stages = true;
            pt.limit.stabilized = true;
            pt.limit.lim_dim = 0;
            pt.limit.lim1_zero = true;
            pt.limit.image_dims.assign(t.stages() - 1, 0);
            pt.limit.eventual_image = SparseMatrix(engine.hc_dim(parity), 0);
            for (int j = 0; j < t.stages(); ++j)
                pt.limit.images.push_back(SparseMatrix(pt.hc_dims[j], 0));
            pt.flat = true;
        }
        (parity == 0 ? rep.even : rep.odd) = std::move(pt);
    }
    return rep;
}

StabilizedHP stabilized_hp(CyclicHomology& engine, int parity, int window) {
    HPReport rep = hp(engine, window);
    const ParityTower& pt = parity % 2 == 0 ? rep.even : rep.odd;
    if (!pt.enough_stages)
        throw std::invalid_argument("stabilized_hp: not enough certified tower stages");
    if (!pt.limit.stabilized)
        throw std::invalid_argument("stabilized_hp: tower did not stabilize");
    StabilizedHP out;
    out.parity = parity % 2;
    out.dim = pt.limit.lim_dim;
    out.basis = pt.limit.eventual_image;
    return out;
}

SparseMatrix hc_induced(CyclicHomology& src_engine, CyclicHomology& dst_engine,
                        const CyclicMorphism& f, int n) {
    const auto& s = src_engine.cc();
    const auto& d = dst_engine.cc();
    SparseMatrix big(d.dim(n), s.dim(n));
    for (const auto& [c, off] : s.offset[s.index_of(n)]) {
        if (!d.offset[d.index_of(n)].count(c))
            continue;
        big.insert_block(d.offset[d.index_of(n)].at(c), off, f.f[n - c]);
    }
    const SparseMatrix dst_dout = d.index_of(n) >= 1 ? d.chain.d[d.index_of(n)]
                                                     : SparseMatrix(0, d.dim(n));
    return induced_map(big, src_engine.hc_data(n), dst_engine.hc_data(n), dst_dout);
}

HPMapResult hp_map(CyclicHomology& se, CyclicHomology& de, const CyclicMorphism& f,
                   int parity, int window) {
    StabilizedHP shp = stabilized_hp(se, parity, window);
    StabilizedHP dhp = stabilized_hp(de, parity, window);

    HPMapResult out;
    out.parity = parity % 2;

    // S-naturality of the induced maps on HC in the certified range
    out.s_natural = true;
    for (int n = parity + 2; n <= std::min(se.max_certified(), de.max_certified()); n += 2) {
        SparseMatrix lhs = de.s_matrix(n) * hc_induced(se, de, f, n);
        SparseMatrix rhs = hc_induced(se, de, f, n - 2) * se.s_matrix(n);
        if (lhs != rhs)
            out.s_natural = false;
    }

    SparseMatrix fstar = hc_induced(se, de, f, out.parity);
    // restrict to the eventual images
    Echelon dst_img(dhp.basis, true);
    out.matrix = SparseMatrix(dhp.dim, shp.dim);
    for (int j = 0; j < shp.dim; ++j) {
        auto x = dst_img.solve(fstar.apply(shp.basis.col(j)));
        if (!x)
            throw std::logic_error("hp_map: image left the stabilized subspace");
        out.matrix.col_mut(j) = *x;
    }
    out.iso = (shp.dim == dhp.dim) && rank_of(out.matrix) == shp.dim;
    return out;
}

SparseMatrix hc_connecting(CyclicHomology& sub_engine, CyclicHomology& mid_engine,
                           CyclicHomology& quot_engine, const CyclicMorphism& incl,
                           const CyclicMorphism& proj, int n) {
    const auto& st = sub_engine.cc();
    const auto& mt = mid_engine.cc();
    const auto& qt = quot_engine.cc();

    ShortExactSeq ses;
    ses.sub = st.chain;
    ses.mid = mt.chain;
    ses.quot = qt.chain;
    const size_t len = mt.chain.dims.size();
    ChainMap ic, pc;
    ic.f.resize(len);
    pc.f.resize(len);
    for (size_t i = 0; i < len; ++i) {
        int deg = static_cast<int>(i);
        SparseMatrix inc(mt.chain.dims[i], st.chain.dims[i]);
        SparseMatrix pr(qt.chain.dims[i], mt.chain.dims[i]);
        for (const auto& [c, off] : mt.offset[i]) {
            int q = deg - c;
            if (st.offset[i].count(c))
                inc.insert_block(off, st.offset[i].at(c), incl.f[q]);
            if (qt.offset[i].count(c))
                pr.insert_block(qt.offset[i].at(c), off, proj.f[q]);
        }
        ic.f[i] = std::move(inc);
        pc.f[i] = std::move(pr);
    }
    ses.incl = ic;
    ses.proj = pc;
    validate_ses(ses);

    return connecting_map(ses, n, quot_engine.hc_data(n), sub_engine.hc_data(n - 1));
}

} // namespace chom
