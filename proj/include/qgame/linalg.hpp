#pragma once
// Dense complex vectors and matrices sized for small tensor-product Hilbert
// spaces (dimension n*n with n small, typically 2). Every operator used by
// the rest of the library has a closed form, so there are no decompositions,
// inversions or matrix exponentials here. All values are immutable in spirit:
// operations are pure functions returning fresh objects.

#include <complex>
#include <initializer_list>
#include <vector>

#include "qgame/errors.hpp"

namespace qgame {

using Cx = std::complex<double>;

// Construction tolerances. Operators are built from closed forms, so these
// are tight enough to catch bugs without tripping on honest rounding.
inline constexpr double NORM_TOL = 1e-10;
inline constexpr double HERM_TOL = 1e-10;
inline constexpr double UNIT_TOL = 1e-10;
inline constexpr double IMAG_TOL = 1e-9;

class CVector {
public:
    explicit CVector(int dim);
    CVector(std::initializer_list<Cx> entries);
    explicit CVector(std::vector<Cx> entries);

    // Basis state e_slot in the given dimension.
    static CVector basis(int dim, int slot);

    int dim() const { return dim_; }
    Cx& operator[](int i) { return e_[i]; }
    const Cx& operator[](int i) const { return e_[i]; }

    double norm_sq() const;
    bool is_normalized(double tol = NORM_TOL) const;
    bool is_finite() const;

private:
    int dim_;
    std::vector<Cx> e_;
};

class ComplexMatrix {
public:
    explicit ComplexMatrix(int dim);  // zero matrix
    ComplexMatrix(int dim, std::vector<Cx> row_major);

    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }
    Cx& at(int row, int col) { return e_[static_cast<size_t>(row) * dim_ + col]; }
    const Cx& at(int row, int col) const { return e_[static_cast<size_t>(row) * dim_ + col]; }

    bool is_hermitian(double tol = HERM_TOL) const;
    bool is_unitary(double tol = UNIT_TOL) const;
    bool is_finite() const;

private:
    int dim_;
    std::vector<Cx> e_;
};

// Kronecker product of vectors. Slot convention: |i,j> lives at index
// i * dim(v) + j, fixed globally across the library.
CVector tensor_vec(const CVector& u, const CVector& v);

// Kronecker product of matrices, consistent with tensor_vec:
// tensor_mat(M, N) * tensor_vec(u, v) == tensor_vec(M u, N v).
ComplexMatrix tensor_mat(const ComplexMatrix& m, const ComplexMatrix& n);

// <state| M |state> for Hermitian M and a normalized state. The imaginary
// residue of the raw inner product must stay below IMAG_TOL; anything larger
// means an operator was built wrong and throws ImaginaryResidue.
double expectation(const CVector& state, const ComplexMatrix& m);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
CVector apply(const ComplexMatrix& m, const CVector& v);
ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(Cx factor, const ComplexMatrix& m);
Cx inner(const CVector& u, const CVector& v);

}  // namespace qgame
