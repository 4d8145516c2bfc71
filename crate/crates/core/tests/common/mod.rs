//! Seeded instance generators and the randomized checks shared by the
//! property suites and the acceptance run.
#![allow(dead_code)]

use jjcoh_core::cochain::{
    apply_d, apply_delta, cocycles, cohomology, is_coboundary, is_cocycle,
};
use jjcoh_core::linalg::{int, rat};
use jjcoh_core::representation::{extensions_equivalent, semidirect_product_unchecked};
use jjcoh_core::{standard, Algebra, Cochain, RatMatrix, Rational, Representation, SymmetryClass};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(rng: &mut ChaCha8Rng) -> Rational {
    [int(-2), int(-1), int(1), int(2), rat(1, 2), rat(-1, 3)].choose(rng).unwrap().clone()
}

fn sparse(rng: &mut ChaCha8Rng, density: f64) -> Rational {
    if rng.gen_bool(density) {
        small(rng)
    } else {
        Rational::zero()
    }
}

/// Unipotent lower-triangular change of basis (always invertible).
pub fn random_unipotent(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    let mut p = RatMatrix::identity(n);
    for r in 0..n {
        for c in 0..r {
            p.set(r, c, sparse(rng, 0.3));
        }
    }
    p
}

/// `V ⊕ W` with `V·V ⊆ W` and `W` annihilating everything: every such
/// commutative algebra is Jacobi-Jordan since all triple products vanish.
/// A random basis change hides the splitting.
pub fn two_step_algebra(rng: &mut ChaCha8Rng, n: usize) -> Algebra {
    if n < 2 {
        return Algebra::zero(n);
    }
    let k = rng.gen_range(1..n);
    let mut s = vec![Rational::zero(); n * n * n];
    for i in 0..k {
        for j in i..k {
            for l in k..n {
                let q = sparse(rng, 0.4);
                s[(i * n + j) * n + l] = q.clone();
                s[(j * n + i) * n + l] = q;
            }
        }
    }
    let a = Algebra::new(n, s).unwrap();
    a.transport(&random_unipotent(rng, n)).unwrap()
}

/// A random Jacobi-Jordan algebra of dimension `1..=max_dim`.
pub fn random_algebra(rng: &mut ChaCha8Rng, max_dim: usize) -> Algebra {
    match rng.gen_range(0..6) {
        0 if max_dim >= 4 => {
            let base = if rng.gen_bool(0.5) { standard::j4() } else { standard::a12_plus_a12() };
            base.transport(&random_unipotent(rng, 4)).unwrap()
        }
        1 if max_dim >= 3 => standard::no_invariant_metric(),
        _ => {
            let n = rng.gen_range(1..=max_dim);
            two_step_algebra(rng, n)
        }
    }
}

/// `π(x) = λ(x) N` with `λ` vanishing on `J²` and `N² = 0`.
fn square_zero_rep(rng: &mut ChaCha8Rng, a: &Algebra) -> Representation {
    let n = a.dim();
    let m = rng.gen_range(2..=3);
    let mut nmat = RatMatrix::zeros(m, m);
    for r in 0..m {
        for c in (r + 1)..m {
            nmat.set(r, c, sparse(rng, 0.7));
        }
    }
    if m == 3 {
        // keep N² = 0: kill the path 0 → 1 → 2
        nmat.set(1, 2, Rational::zero());
    }
    // λ: a random combination of forms vanishing on J²
    let sq = a.derived_powers().unwrap().power(2);
    let forms = jjcoh_core::linalg::nullspace(&sq.matrix().transpose());
    let mut lambda = vec![Rational::zero(); n];
    for f in forms.vectors() {
        let s = sparse(rng, 0.7);
        for (l, x) in lambda.iter_mut().zip(&f) {
            *l += &s * x;
        }
    }
    let action = lambda.iter().map(|l| nmat.scale(l)).collect();
    Representation::new(a.clone(), m, action).unwrap()
}

/// A random valid representation: trivial, adjoint, square-zero, or a
/// direct sum of two of these.
pub fn random_rep(rng: &mut ChaCha8Rng, a: &Algebra) -> Representation {
    let single = |rng: &mut ChaCha8Rng| match rng.gen_range(0..3) {
        0 => Representation::trivial(a, rng.gen_range(1..=2)),
        1 => Representation::adjoint(a),
        _ => square_zero_rep(rng, a),
    };
    let r = single(rng);
    if rng.gen_bool(0.25) && r.module_dim() + a.dim() <= 6 {
        let s = single(rng);
        r.direct_sum(&s).unwrap()
    } else {
        r
    }
}

/// An action with random small entries; usually not a representation.
pub fn random_action(rng: &mut ChaCha8Rng, a: &Algebra) -> Representation {
    let m = rng.gen_range(1..=2);
    let action = (0..a.dim())
        .map(|_| {
            let mut x = RatMatrix::zeros(m, m);
            for r in 0..m {
                for c in 0..m {
                    x.set(r, c, sparse(rng, 0.3));
                }
            }
            x
        })
        .collect();
    Representation::new(a.clone(), m, action).unwrap()
}

pub fn random_cochain(rng: &mut ChaCha8Rng, p: usize, n: usize, m: usize) -> Cochain {
    let len = m * n.pow(p as u32);
    Cochain::new(p, n, m, (0..len).map(|_| sparse(rng, 0.3)).collect()).unwrap()
}

pub fn random_combination(rng: &mut ChaCha8Rng, basis: &[Vec<Rational>], len: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    for b in basis {
        let s = sparse(rng, 0.6);
        for (x, y) in v.iter_mut().zip(b) {
            *x += &s * y;
        }
    }
    v
}

pub type Check = Result<(), String>;

fn fail(what: &str, a: &Algebra) -> String {
    format!("{what} on algebra with structure {:?}", a.structure())
}

/// `d^p ∘ δ^{p-1} = 0` for `p = 1, 2, 3`.
pub fn check_d_delta(seed: u64) -> Check {
    let mut g = rng(seed);
    let a = random_algebra(&mut g, 5);
    let r = random_rep(&mut g, &a);
    let (n, m) = (a.dim(), r.module_dim());
    let max_p = if n * m > 12 { 2 } else { 3 };
    for p in 1..=max_p {
        let c = random_cochain(&mut g, p - 1, n, m).skew_part();
        let dd = apply_d(&r, &apply_delta(&r, &c).unwrap()).unwrap();
        if !dd.is_zero() {
            return Err(fail(&format!("d^{p} δ^{} != 0", p - 1), &a));
        }
    }
    Ok(())
}

/// `J ⋉ M` is Jacobi-Jordan exactly when the action is a representation.
pub fn check_semidirect(seed: u64) -> Check {
    let mut g = rng(seed);
    let a = random_algebra(&mut g, 4);
    let r = if g.gen_bool(0.5) { random_rep(&mut g, &a) } else { random_action(&mut g, &a) };
    let axiom = r.check_representation().holds();
    let valid = semidirect_product_unchecked(&r, None).unwrap().validate_jacobi_jordan().holds();
    if axiom != valid {
        return Err(fail(&format!("axiom {axiom} but semidirect product valid {valid}"), &a));
    }
    Ok(())
}

/// `E_c` is Jacobi-Jordan exactly when `c` is a symmetric 2-cocycle.
pub fn check_extension_validity(seed: u64) -> Check {
    let mut g = rng(seed);
    let a = random_algebra(&mut g, 4);
    let r = random_rep(&mut g, &a);
    let (n, m) = (a.dim(), r.module_dim());
    let c = if g.gen_bool(0.5) {
        let z = cocycles(&r, 2, SymmetryClass::Symmetric).unwrap();
        Cochain::new(2, n, m, random_combination(&mut g, &z.vectors(), m * n * n)).unwrap()
    } else {
        random_cochain(&mut g, 2, n, m).symmetric_part()
    };
    let cocycle = is_cocycle(&r, &c).unwrap();
    let valid = semidirect_product_unchecked(&r, Some(&c)).unwrap().validate_jacobi_jordan().holds();
    if cocycle != valid {
        return Err(fail(&format!("cocycle {cocycle} but extension valid {valid}"), &a));
    }
    Ok(())
}

/// `E_c ≅ E_c'` as extensions exactly when `c - c'` is a coboundary.
pub fn check_extension_equivalence(seed: u64) -> Check {
    let mut g = rng(seed);
    let a = random_algebra(&mut g, 4);
    let r = random_rep(&mut g, &a);
    let (n, m) = (a.dim(), r.module_dim());
    let z: Vec<_> = cocycles(&r, 2, SymmetryClass::Symmetric).unwrap().vectors();
    let c = Cochain::new(2, n, m, random_combination(&mut g, &z, m * n * n)).unwrap();
    let c2 = if g.gen_bool(0.5) {
        let f = random_cochain(&mut g, 1, n, m);
        c.add(&apply_delta(&r, &f).unwrap()).unwrap()
    } else {
        Cochain::new(2, n, m, random_combination(&mut g, &z, m * n * n)).unwrap()
    };
    let equivalent = extensions_equivalent(&r, &c, &c2).unwrap().is_some();
    let coboundary = is_coboundary(&r, &c.sub(&c2).unwrap()).unwrap().is_some();
    if equivalent != coboundary {
        return Err(fail(&format!("equivalent {equivalent} but coboundary {coboundary}"), &a));
    }
    Ok(())
}

/// With `C(M) = 0` every 2-cocycle is symmetric; in general the skew part
/// of a 2-cocycle takes values in `C(M)`. Returns whether the instance had
/// `C(M) = 0`.
pub fn check_invariants_and_symmetry(seed: u64) -> Result<bool, String> {
    let mut g = rng(seed);
    let a = random_algebra(&mut g, 4);
    let r = if g.gen_bool(0.2) { Representation::trivial(&a, 0) } else { random_rep(&mut g, &a) };
    let (n, m) = (a.dim(), r.module_dim());
    let cm = r.module_invariants();
    let z = cohomology(&r, 2, SymmetryClass::Full).unwrap();
    let zs = cohomology(&r, 2, SymmetryClass::Symmetric).unwrap();
    for v in z.cocycle_basis.vectors() {
        let ca = Cochain::new(2, n, m, v).unwrap().skew_part();
        for i in 0..n {
            for j in 0..n {
                if !cm.contains(&ca.value(&[i, j])).unwrap() {
                    return Err(fail("skew part of a cocycle leaves C(M)", &a));
                }
            }
        }
    }
    let trivial_cm = cm.dim() == 0;
    if trivial_cm && z.dim_cocycles != zs.dim_cocycles {
        return Err(fail("C(M) = 0 but Z² has a skew cocycle", &a));
    }
    Ok(trivial_cm)
}

/// `H⁰(J, J) = Ann(J)`.
pub fn check_h0_annihilator(seed: u64) -> Check {
    let mut g = rng(seed);
    let a = random_algebra(&mut g, 5);
    let h0 = cohomology(&Representation::adjoint(&a), 0, SymmetryClass::Full).unwrap();
    if !h0.cocycle_basis.same_span(&a.annihilator()).unwrap() || h0.dim_cohomology != a.annihilator().dim() {
        return Err(fail("H⁰(adjoint) != Ann", &a));
    }
    Ok(())
}

/// `dim H¹(J, K) = dim J/J²`.
pub fn check_h1_trivial(seed: u64) -> Check {
    let mut g = rng(seed);
    let a = random_algebra(&mut g, 5);
    let h1 = cohomology(&Representation::trivial(&a, 1), 1, SymmetryClass::Full).unwrap();
    let sq = if a.dim() == 0 { 0 } else { a.derived_powers().unwrap().power(2).dim() };
    if h1.dim_cohomology != a.dim() - sq {
        return Err(fail(&format!("dim H¹ = {} but dim J/J² = {}", h1.dim_cohomology, a.dim() - sq), &a));
    }
    Ok(())
}
