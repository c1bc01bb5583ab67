//! Exact scalars and polynomials over Q, F_p and F_{p^2}.

mod bipoly;
mod field;
mod mpoly;
mod poly;
mod ratfun;

pub use bipoly::BiPoly;
pub use field::{
    exact_isqrt, invmod, is_prime, is_rational_square, parse_q, powmod, q, qf, quadratic_character,
    smallest_nonresidue, Field, FiniteField, FiniteFieldElem, Q,
};
pub use mpoly::MPoly;
pub use poly::{discriminant, primitive_part, qpoly, resultant, squarefree_factor, UniPoly};
pub use ratfun::RationalFunction;

/// Refine a list of nonconstant polynomials into a pairwise coprime,
/// squarefree, monic basis whose products generate every input up to units.
pub fn coprime_basis(polys: &[UniPoly<Q>]) -> Vec<UniPoly<Q>> {
    let mut basis: Vec<UniPoly<Q>> = vec![];
    for p in polys {
        for (f, _) in squarefree_factor(p) {
            let mut pending = vec![f];
            while let Some(mut f) = pending.pop() {
                let mut i = 0;
                while i < basis.len() {
                    let g = f.gcd(&basis[i]);
                    if g.degree().unwrap_or(0) > 0 {
                        let b = basis.swap_remove(i);
                        let b1 = b.div_exact(&g).expect("gcd divides");
                        let f1 = f.div_exact(&g).expect("gcd divides");
                        if b1.degree().unwrap_or(0) > 0 {
                            pending.push(b1.monic());
                        }
                        pending.push(g.monic());
                        f = f1;
                        if f.degree().unwrap_or(0) == 0 {
                            break;
                        }
                        i = 0;
                    } else {
                        i += 1;
                    }
                }
                if f.degree().unwrap_or(0) > 0 {
                    basis.push(f.monic());
                }
            }
        }
    }
    basis
}
