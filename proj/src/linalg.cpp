#include "qgame/linalg.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qgame {

namespace {

bool finite(const Cx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void require_positive_dim(int dim, const char* what) {
    if (dim < 1) {
        throw InvalidParameter(std::string(what) + ": dimension must be >= 1, got " +
                               std::to_string(dim));
    }
}

}  // namespace

CVector::CVector(int dim) : dim_(dim), e_(static_cast<size_t>(dim)) {
    require_positive_dim(dim, "CVector");
}

CVector::CVector(std::initializer_list<Cx> entries)
    : dim_(static_cast<int>(entries.size())), e_(entries) {
    require_positive_dim(dim_, "CVector");
    if (!is_finite()) throw InvalidParameter("CVector: non-finite entry");
}

CVector::CVector(std::vector<Cx> entries)
    : dim_(static_cast<int>(entries.size())), e_(std::move(entries)) {
    require_positive_dim(dim_, "CVector");
    if (!is_finite()) throw InvalidParameter("CVector: non-finite entry");
}

CVector CVector::basis(int dim, int slot) {
    require_positive_dim(dim, "CVector::basis");
    if (slot < 0 || slot >= dim) throw InvalidParameter("CVector::basis: slot out of range");
    CVector v(dim);
    v[slot] = Cx{1.0, 0.0};
    return v;
}

double CVector::norm_sq() const {
    double s = 0.0;
    for (const Cx& z : e_) s += std::norm(z);
    return s;
}

bool CVector::is_normalized(double tol) const {
    return std::abs(norm_sq() - 1.0) <= tol;
}

bool CVector::is_finite() const {
    for (const Cx& z : e_) {
        if (!finite(z)) return false;
    }
    return true;
}

ComplexMatrix::ComplexMatrix(int dim)
    : dim_(dim), e_(static_cast<size_t>(dim) * dim) {
    require_positive_dim(dim, "ComplexMatrix");
}

ComplexMatrix::ComplexMatrix(int dim, std::vector<Cx> row_major)
    : dim_(dim), e_(std::move(row_major)) {
    require_positive_dim(dim, "ComplexMatrix");
    if (e_.size() != static_cast<size_t>(dim) * dim) {
        throw DimensionMismatch("ComplexMatrix: entry count does not match dim*dim");
    }
    if (!is_finite()) throw InvalidParameter("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = Cx{1.0, 0.0};
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    for (int r = 0; r < dim_; ++r) {
        for (int c = r; c < dim_; ++c) {
            if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
        }
    }
    return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
    for (int r = 0; r < dim_; ++r) {
        for (int c = 0; c < dim_; ++c) {
            Cx s{0.0, 0.0};
            for (int k = 0; k < dim_; ++k) s += std::conj(at(k, r)) * at(k, c);
            const Cx want = (r == c) ? Cx{1.0, 0.0} : Cx{0.0, 0.0};
            if (std::abs(s - want) > tol) return false;
        }
    }
    return true;
}

bool ComplexMatrix::is_finite() const {
    for (const Cx& z : e_) {
        if (!finite(z)) return false;
    }
    return true;
}

CVector tensor_vec(const CVector& u, const CVector& v) {
    CVector out(u.dim() * v.dim());
    for (int i = 0; i < u.dim(); ++i) {
        for (int j = 0; j < v.dim(); ++j) {
            out[i * v.dim() + j] = u[i] * v[j];
        }
    }
    return out;
}

ComplexMatrix tensor_mat(const ComplexMatrix& m, const ComplexMatrix& n) {
    const int dm = m.dim(), dn = n.dim();
    ComplexMatrix out(dm * dn);
    for (int i = 0; i < dm; ++i) {
        for (int k = 0; k < dm; ++k) {
            const Cx mik = m.at(i, k);
            if (mik == Cx{0.0, 0.0}) continue;
            for (int j = 0; j < dn; ++j) {
                for (int l = 0; l < dn; ++l) {
                    out.at(i * dn + j, k * dn + l) = mik * n.at(j, l);
                }
            }
        }
    }
    return out;
}

double expectation(const CVector& state, const ComplexMatrix& m) {
    if (state.dim() != m.dim()) {
        throw DimensionMismatch("expectation: state dim " + std::to_string(state.dim()) +
                                " vs operator dim " + std::to_string(m.dim()));
    }
    if (!m.is_hermitian()) throw NonHermitian("expectation: operator is not Hermitian");
    if (!state.is_normalized()) throw InvalidParameter("expectation: state is not normalized");

    Cx raw{0.0, 0.0};
    for (int r = 0; r < m.dim(); ++r) {
        Cx row{0.0, 0.0};
        for (int c = 0; c < m.dim(); ++c) row += m.at(r, c) * state[c];
        raw += std::conj(state[r]) * row;
    }
    if (std::abs(raw.imag()) > IMAG_TOL) {
        throw ImaginaryResidue("expectation: imaginary residue " +
                               std::to_string(raw.imag()));
    }
    return raw.real();
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("matmul: incompatible dimensions");
    const int d = a.dim();
    ComplexMatrix out(d);
    for (int r = 0; r < d; ++r) {
        for (int k = 0; k < d; ++k) {
            const Cx ark = a.at(r, k);
            if (ark == Cx{0.0, 0.0}) continue;
            for (int c = 0; c < d; ++c) out.at(r, c) += ark * b.at(k, c);
        }
    }
    return out;
}

CVector apply(const ComplexMatrix& m, const CVector& v) {
    if (m.dim() != v.dim()) throw DimensionMismatch("apply: incompatible dimensions");
    CVector out(v.dim());
    for (int r = 0; r < m.dim(); ++r) {
        Cx s{0.0, 0.0};
        for (int c = 0; c < m.dim(); ++c) s += m.at(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.dim());
    for (int r = 0; r < m.dim(); ++r) {
        for (int c = 0; c < m.dim(); ++c) out.at(c, r) = std::conj(m.at(r, c));
    }
    return out;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("add: incompatible dimensions");
    ComplexMatrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r) {
        for (int c = 0; c < a.dim(); ++c) out.at(r, c) = a.at(r, c) + b.at(r, c);
    }
    return out;
}

ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("sub: incompatible dimensions");
    ComplexMatrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r) {
        for (int c = 0; c < a.dim(); ++c) out.at(r, c) = a.at(r, c) - b.at(r, c);
    }
    return out;
}

ComplexMatrix scale(Cx factor, const ComplexMatrix& m) {
    ComplexMatrix out(m.dim());
    for (int r = 0; r < m.dim(); ++r) {
        for (int c = 0; c < m.dim(); ++c) out.at(r, c) = factor * m.at(r, c);
    }
    return out;
}

Cx inner(const CVector& u, const CVector& v) {
    if (u.dim() != v.dim()) throw DimensionMismatch("inner: incompatible dimensions");
    Cx s{0.0, 0.0};
    for (int i = 0; i < u.dim(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

}  // namespace qgame
