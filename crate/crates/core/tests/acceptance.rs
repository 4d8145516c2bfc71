//! Acceptance run: one line per criterion, exit status 1 if any fails.
//! Printed data is taken literally; where it does not check out the line
//! says which part failed and what the computation gives instead.

mod common;

use jjcoh_core::cochain::{apply_delta, cohomology, is_coboundary, is_cocycle};
use jjcoh_core::deformation::{specialize, verify_deformation, DeformationMode, TruncatedDeformation};
use jjcoh_core::linalg::{int, rat};
use jjcoh_core::structures::{
    antiderivations, derivations, exact_sequence_report, inner_antiderivations, invariant_forms,
    structure_report, symmetric_skew_derivations, BilinearForm,
};
use jjcoh_core::{standard, Algebra, Cochain, RatMatrix, Rational, Representation, SubspaceBasis, SymmetryClass};
use num_traits::{One, Zero};

const N: usize = 4;

struct Outcome {
    pass: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { pass: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.details.push(what);
        } else {
            self.pass = false;
            self.details.push(format!("FAILED {what}"));
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(what.into());
    }
}

fn j4() -> Algebra {
    standard::j4()
}

fn trivial() -> Representation {
    Representation::trivial(&j4(), 1)
}

fn adjoint() -> Representation {
    Representation::adjoint(&j4())
}

/// Scalar 2-cochain from `(i, j, q)` with 1-based indices, taken literally.
fn scalar2(entries: &[(usize, usize, Rational)]) -> Cochain {
    let e: Vec<_> = entries.iter().map(|(i, j, q)| (vec![i - 1, j - 1], 0, q.clone())).collect();
    Cochain::from_entries(2, N, 1, &e).unwrap()
}

fn e(i: usize, j: usize) -> Vec<(usize, usize, Rational)> {
    vec![(i, j, int(1))]
}

fn sum(parts: &[(i64, i64, usize, usize)]) -> Vec<(usize, usize, Rational)> {
    parts.iter().map(|&(p, q, i, j)| (i, j, rat(p, q))).collect()
}

/// Skew scalar 2-cochain with `f(e_i, e_j) = q = −f(e_j, e_i)`.
fn skew2(entries: &[(usize, usize, Rational)]) -> Cochain {
    let mut e = Vec::new();
    for (i, j, q) in entries {
        e.push((vec![i - 1, j - 1], 0, q.clone()));
        e.push((vec![j - 1, i - 1], 0, -q.clone()));
    }
    Cochain::from_entries(2, N, 1, &e).unwrap()
}

fn sym3(entries: &[([usize; 3], Rational)]) -> Cochain {
    let e: Vec<_> = entries.iter().map(|(a, q)| (a.iter().map(|i| i - 1).collect(), 0, q.clone())).collect();
    Cochain::symmetric_from_entries(3, N, 1, &e).unwrap()
}

/// Symmetric adjoint 2-cochain: `c(e_i, e_j) = q e_k`.
fn adj2(entries: &[(usize, usize, usize, Rational)]) -> Cochain {
    let e: Vec<_> = entries.iter().map(|(i, j, k, q)| (vec![i - 1, j - 1], k - 1, q.clone())).collect();
    Cochain::symmetric_from_entries(2, N, N, &e).unwrap()
}

/// Linear map `e_i ↦ q e_k` as an adjoint 1-cochain.
fn adj1(entries: &[(usize, usize, Rational)]) -> Cochain {
    let e: Vec<_> = entries.iter().map(|(i, k, q)| (vec![i - 1], k - 1, q.clone())).collect();
    Cochain::from_entries(1, N, N, &e).unwrap()
}

fn span(vs: &[Cochain]) -> SubspaceBasis {
    let len = vs.first().map_or(0, |c| c.coeffs().len());
    SubspaceBasis::span(len, &vs.iter().map(|c| c.coeffs().to_vec()).collect::<Vec<_>>()).unwrap()
}

/// A parametrised endomorphism family `Σ a_k M_k`, given by one matrix per parameter.
fn family(n_params: usize, entry: impl Fn(usize, usize, usize) -> i64) -> SubspaceBasis {
    let vs: Vec<Vec<Rational>> = (0..n_params)
        .map(|k| (0..N * N).map(|f| int(entry(k, f / N, f % N))).collect())
        .collect();
    SubspaceBasis::span(N * N, &vs).unwrap()
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let h = cohomology(&trivial(), 1, SymmetryClass::Full).unwrap();
    o.check(h.dim_cohomology == 2, format!("dim H1 = {}", h.dim_cohomology));
    let supported = h.representatives.vectors().iter().all(|v| v[1].is_zero() && v[3].is_zero());
    o.check(supported, "representatives supported on {e1, e3}");
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let a = j4();
    let h = cohomology(&adjoint(), 1, SymmetryClass::Full).unwrap();
    o.check(h.dim_cohomology == 5, format!("dim H1(adjoint) = {}", h.dim_cohomology));
    let ader = antiderivations(&a);
    let iader = inner_antiderivations(&a);
    o.check(ader.dim() == 7, format!("dim ADer = {}", ader.dim()));
    o.check(iader.dim() == 2, format!("dim IADer = {}", iader.dim()));
    // [[a1,0,0,0],[a2,-2a1,a3,0],[a4,0,a5,0],[a6,a4,a7,-a1-a5]]
    let printed = family(7, |k, r, c| match (k, r, c) {
        (0, 0, 0) => 1,
        (0, 1, 1) => -2,
        (0, 3, 3) => -1,
        (1, 1, 0) => 1,
        (2, 1, 2) => 1,
        (3, 2, 0) | (3, 3, 1) => 1,
        (4, 2, 2) => 1,
        (4, 3, 3) => -1,
        (5, 3, 0) => 1,
        (6, 3, 2) => 1,
        _ => 0,
    });
    o.check(printed.same_span(&ader).unwrap(), "printed ADer matrix family spans ADer");
    // D(e2) = -2 e1·D(e1) forces the (4,2) entry to be -2a4
    let fixed = family(7, |k, r, c| match (k, r, c) {
        (0, 0, 0) => 1,
        (0, 1, 1) => -2,
        (0, 3, 3) => -1,
        (1, 1, 0) | (2, 1, 2) | (3, 2, 0) => 1,
        (3, 3, 1) => -2,
        (4, 2, 2) => 1,
        (4, 3, 3) => -1,
        (5, 3, 0) | (6, 3, 2) => 1,
        _ => 0,
    });
    o.note(format!("family with (4,2) entry -2a4 spans ADer: {}", fixed.same_span(&ader).unwrap()));
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let r = trivial();
    let h = cohomology(&r, 2, SymmetryClass::Full).unwrap();
    o.check(h.dim_cocycles == 8, format!("dim Z2 = {}", h.dim_cocycles));
    let printed = [
        ("E11", scalar2(&e(1, 1))),
        ("E13", scalar2(&e(1, 3))),
        ("E31", scalar2(&e(3, 1))),
        ("E32", scalar2(&e(3, 2))),
        ("E33", scalar2(&e(3, 3))),
        ("E34", scalar2(&e(3, 4))),
        ("E41", scalar2(&e(4, 1))),
        ("E14-1/2E23", scalar2(&sum(&[(1, 1, 1, 4), (-1, 2, 2, 3)]))),
    ];
    let bad: Vec<&str> = printed.iter().filter(|(_, c)| !is_cocycle(&r, c).unwrap()).map(|(n, _)| *n).collect();
    o.check(bad.is_empty(), format!("printed generators are cocycles (not cocycles: {bad:?})"));
    let ps: Vec<Cochain> = printed.iter().map(|(_, c)| c.clone()).collect();
    o.check(span(&ps).same_span(&h.cocycle_basis).unwrap(), "printed generators span Z2");
    let b = span(&[scalar2(&e(1, 1)), scalar2(&[(1, 3, int(1)), (3, 1, int(1))])]);
    o.check(h.dim_coboundaries == 2, format!("dim B2 = {}", h.dim_coboundaries));
    o.check(b.same_span(&h.coboundary_basis).unwrap(), "B2 = span{E11, E13+E31}");
    o.check(h.dim_cohomology == 6, format!("dim H2 = {}", h.dim_cohomology));
    // the cocycle condition actually forces c(e2,e3) = -2 c(e4,e1)
    let fixed = scalar2(&sum(&[(1, 1, 4, 1), (-2, 1, 2, 3)]));
    o.note(format!("E41-2E23 is a cocycle: {}", is_cocycle(&r, &fixed).unwrap()));
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let r = trivial();
    let h = cohomology(&r, 2, SymmetryClass::Symmetric).unwrap();
    o.check(h.dim_cocycles == 4, format!("dim Zs2 = {}", h.dim_cocycles));
    o.check(h.dim_cohomology == 2, format!("dim Hs2 = dim Ext = {}", h.dim_cohomology));
    let reps = |second: &Cochain| {
        let mut vs = h.coboundary_basis.vectors();
        vs.push(scalar2(&e(3, 3)).coeffs().to_vec());
        vs.push(second.coeffs().to_vec());
        let s = SubspaceBasis::span(N * N, &vs).unwrap();
        is_cocycle(&r, second).unwrap() && s.same_span(&h.cocycle_basis).unwrap()
    };
    let printed = scalar2(&sum(&[(1, 1, 2, 3), (1, 1, 3, 2), (-2, 1, 1, 4), (-2, 1, 4, 1)]));
    o.check(is_cocycle(&r, &scalar2(&e(3, 3))).unwrap(), "E33 is a symmetric cocycle");
    o.check(reps(&printed), "E33 and E23+E32-2E14-2E41 represent Hs2");
    let fixed = scalar2(&sum(&[(1, 1, 1, 4), (1, 1, 4, 1), (-2, 1, 2, 3), (-2, 1, 3, 2)]));
    o.note(format!("E14+E41-2E23-2E32 with E33 represents Hs2: {}", reps(&fixed)));
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let za = cohomology(&trivial(), 2, SymmetryClass::Skew).unwrap().dim_cocycles;
    let b = BilinearForm::new(standard::j4_form()).unwrap();
    let der_a = symmetric_skew_derivations(&j4(), &b).unwrap().1.dim();
    o.check(za == 2, format!("dim Za2 = {za}"));
    o.check(der_a == 2, format!("dim Der_a = {der_a}"));
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let der = derivations(&j4());
    o.check(der.dim() == 7, format!("dim Der = {}", der.dim()));
    // [[a1,0,0,0],[a2,2a1,a3,0],[a4,0,a5,0],[a6,2a4,a7,a1+a5]]
    let printed = family(7, |k, r, c| match (k, r, c) {
        (0, 0, 0) | (0, 3, 3) => 1,
        (0, 1, 1) => 2,
        (1, 1, 0) => 1,
        (2, 1, 2) => 1,
        (3, 2, 0) => 1,
        (3, 3, 1) => 2,
        (4, 2, 2) | (4, 3, 3) => 1,
        (5, 3, 0) => 1,
        (6, 3, 2) => 1,
        _ => 0,
    });
    o.check(printed.same_span(&der).unwrap(), "printed Der matrix family spans Der");
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let r = trivial();
    let h = cohomology(&r, 3, SymmetryClass::Symmetric).unwrap();
    o.check(h.dim_cocycles == 6, format!("dim Zs3 = {}", h.dim_cocycles));
    o.check(h.dim_cohomology == 2, format!("dim Hs3 = {}", h.dim_cohomology));
    let c = [
        sym3(&[([1, 3, 4], int(1)), ([2, 3, 3], int(-4))]),
        sym3(&[([3, 3, 3], int(1))]),
        sym3(&[([1, 1, 4], int(1)), ([1, 2, 3], int(-1))]),
        sym3(&[([1, 1, 1], int(1))]),
        sym3(&[([1, 1, 3], int(1))]),
        sym3(&[([1, 3, 3], int(1))]),
    ];
    let all = c.iter().all(|x| is_cocycle(&r, x).unwrap());
    o.check(all, "c1..c6 are cocycles");
    o.check(span(&c).same_span(&h.cocycle_basis).unwrap(), "c1..c6 span Zs3");
    let classes = span(&[c[0].clone(), c[1].clone()]);
    let mut with_b = h.coboundary_basis.vectors();
    with_b.extend(classes.vectors());
    let independent = SubspaceBasis::span(N * N * N, &with_b).unwrap().dim() == h.dim_coboundaries + 2;
    o.check(independent, "c1, c2 independent modulo coboundaries");
    let f = [
        skew2(&[(2, 4, int(1))]),
        skew2(&[(1, 2, rat(-1, 3))]),
        skew2(&[(2, 3, int(1))]),
        skew2(&[(3, 4, rat(-1, 2))]),
    ];
    let mut exact = Vec::new();
    let mut negated = Vec::new();
    for (k, (fk, ck)) in f.iter().zip(&c[2..]).enumerate() {
        let d = apply_delta(&r, fk).unwrap();
        if d == *ck {
            exact.push(k + 3);
        }
        if d == ck.scale(&-Rational::one()) {
            negated.push(k + 3);
        }
    }
    o.check(exact.len() == 4, format!("δf_k = c_k holds for k in {exact:?}"));
    o.note(format!("δf_k = -c_k holds for k in {negated:?}"));
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let r = adjoint();
    let h = cohomology(&r, 2, SymmetryClass::Symmetric).unwrap();
    o.check(h.dim_cocycles == 13, format!("dim Zs2(adjoint) = {}", h.dim_cocycles));
    let q = int;
    let c = [
        adj2(&[(3, 3, 2, q(1))]),
        adj2(&[(1, 3, 1, q(1)), (2, 3, 2, q(-2))]),
        adj2(&[(1, 3, 3, q(1)), (2, 3, 4, q(-2))]),
        adj2(&[(1, 4, 2, q(1)), (2, 3, 2, q(-2))]),
        adj2(&[(1, 4, 4, q(1)), (2, 3, 4, q(-2))]),
        adj2(&[(3, 3, 3, q(2)), (3, 4, 4, q(-1))]),
        adj2(&[(1, 1, 1, q(1)), (1, 2, 2, q(-1))]),
        adj2(&[(1, 1, 2, q(1))]),
        adj2(&[(1, 1, 3, q(1)), (1, 2, 4, q(-1))]),
        adj2(&[(1, 1, 4, q(1))]),
        adj2(&[(1, 3, 2, q(1))]),
        adj2(&[(1, 3, 4, q(1))]),
        adj2(&[(3, 3, 4, q(1))]),
    ];
    let bad: Vec<usize> = (0..13).filter(|&k| !is_cocycle(&r, &c[k]).unwrap()).map(|k| k + 1).collect();
    o.check(bad.is_empty(), format!("c1..c13 are cocycles (not cocycles: {bad:?})"));
    o.check(
        h.dim_cohomology == 6,
        format!("dim Hs2(adjoint) = {} (dim B2 ∩ S = {})", h.dim_cohomology, h.dim_coboundaries),
    );
    let f = [
        adj1(&[(2, 1, q(-1))]),
        adj1(&[(2, 2, q(-1))]),
        adj1(&[(2, 3, q(-1))]),
        adj1(&[(2, 1, q(-1))]),
        adj1(&[(4, 2, q(-1))]),
        adj1(&[(4, 4, q(-1))]),
        adj1(&[(3, 1, rat(1, 2)), (4, 2, rat(1, 2))]),
    ];
    let ok: Vec<usize> = (0..7).filter(|&k| apply_delta(&r, &f[k]).unwrap() == c[k + 6]).map(|k| k + 7).collect();
    o.check(ok.len() == 7, format!("δf_k = c_k holds for k in {ok:?}"));
    let c2 = adj2(&[(1, 3, 1, q(1)), (2, 3, 2, q(-2)), (3, 4, 4, q(-1))]);
    let c7 = adj2(&[(1, 1, 1, q(1)), (1, 2, 2, q(-1)), (2, 3, 4, q(-1))]);
    let f10 = adj1(&[(2, 4, q(-1))]);
    o.note(format!(
        "with c2(e3,e4) = -e4 and c7(e2,e3) = -e4 added: cocycles {} {}, δf7 = c7 {}; f10(e2) = -e4 gives δf10 = c10 {}",
        is_cocycle(&r, &c2).unwrap(),
        is_cocycle(&r, &c7).unwrap(),
        apply_delta(&r, &f[0]).unwrap() == c7,
        apply_delta(&r, &f10).unwrap() == c[9],
    ));
    let exact: Vec<usize> =
        (0..6).filter(|&k| is_coboundary(&r, &c[k]).unwrap().is_some()).map(|k| k + 1).collect();
    o.check(exact.is_empty(), format!("c1..c6 individually non-coboundary (coboundaries: {exact:?})"));
    let mut vs = h.coboundary_basis.vectors();
    vs.push(c2.coeffs().to_vec());
    vs.extend([0, 2, 3, 4, 5].iter().map(|&k| c[k].coeffs().to_vec()));
    let classes = SubspaceBasis::span(N * N * N, &vs).unwrap().dim() - h.dim_coboundaries;
    o.note(format!("c1..c6 (corrected c2) span {classes} classes modulo coboundaries"));
    o
}

/// Rank by plain Gauss-Jordan elimination on dense rows.
fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &pivot;
                for c in col..cols {
                    let t = &f * &rows[rank][c];
                    rows[r][c] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim F` from the system `B(xy, z) = B(x, yz)`, `B(x, y) = B(y, x)` in
/// the unknowns `B_ij`.
fn invariant_forms_oracle(a: &Algebra) -> usize {
    let n = a.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![Rational::zero(); n * n];
            row[i * n + j] += int(1);
            row[j * n + i] -= int(1);
            rows.push(row);
            for k in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                for l in 0..n {
                    row[l * n + k] += a.coeff(i, j, l);
                    row[i * n + l] -= a.coeff(j, k, l);
                }
                rows.push(row);
            }
        }
    }
    n * n - rank(rows)
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    let a = j4();
    let b = BilinearForm::new(standard::j4_form()).unwrap();
    let ex = exact_sequence_report(&a, &b).unwrap();
    o.check(ex.ker_nu_is_der_a, "ker ν = Der_a");
    o.check(ex.im_nu_is_ker_mu_bar, "im ν = ker μ̄");
    let s = structure_report(&a, &b).unwrap();
    o.check(
        s.bound_low <= s.dim_f && s.dim_f <= s.bound_high,
        format!("{} <= dim F = {} <= {}", s.bound_low, s.dim_f, s.bound_high),
    );
    o.check(s.bound_low == 4 && s.bound_high == 7, "bounds are 4 and 7");
    let oracle = invariant_forms_oracle(&a);
    o.check(
        s.dim_f == 5 && oracle == 5 && invariant_forms(&a).dim() == 5,
        format!("dim F = 5 (oracle {oracle})"),
    );
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new();
    let c1 = adj2(&[(3, 3, 2, int(1))]);
    let d = TruncatedDeformation::new(j4(), vec![c1]).unwrap();
    let report = verify_deformation(&d, DeformationMode::Polynomial);
    o.check(report.verdict(), format!("polynomial verification over {} orders", report.orders_checked));
    let at4 = specialize(&d, &int(4)).unwrap();
    // u1 = e3-2e1, u2 = 8e2-4e4, u3 = e3+2e1, u4 = 8e2+4e4
    let p = RatMatrix::from_i64(&[&[-2, 0, 2, 0], &[0, 8, 0, 8], &[1, 0, 1, 0], &[0, -4, 0, 4]]);
    let moved = at4.transport(&p).unwrap();
    o.check(moved == standard::a12_plus_a12(), "specialize at 4 then transport gives u1u1 = u2, u3u3 = u4");
    let u1 = p.column(0);
    let sq = at4.product(&u1, &u1).unwrap();
    o.note(format!(
        "(e3-2e1)^2 = {}e2 + {}e4 at t = 4, i.e. 2t e2 - 2√t e4; the printed (t²+t) coefficient would give 20",
        sq[1], sq[3]
    ));
    o
}

fn criterion_11() -> Outcome {
    let mut o = Outcome::new();
    let checks: [(&str, fn(u64) -> common::Check); 6] = [
        ("d∘δ = 0", common::check_d_delta),
        ("semidirect product ⇔ representation", common::check_semidirect),
        ("E_c valid ⇔ c ∈ Zs2", common::check_extension_validity),
        ("equivalence ⇔ c-c' ∈ B2", common::check_extension_equivalence),
        ("H0(adjoint) = Ann", common::check_h0_annihilator),
        ("dim H1(K) = dim J/J²", common::check_h1_trivial),
    ];
    for (name, check) in checks {
        let failures: Vec<String> = (0..100u64).filter_map(|s| check(s).err().map(|e| format!("seed {s}: {e}"))).collect();
        o.check(failures.is_empty(), format!("{name}: 100 instances {failures:?}"));
    }
    let (mut trivial_cm, mut seed, mut errors) = (0, 0u64, Vec::new());
    while trivial_cm < 100 && seed < 5000 {
        match common::check_invariants_and_symmetry(seed) {
            Ok(true) => trivial_cm += 1,
            Ok(false) => {}
            Err(e) => errors.push(format!("seed {seed}: {e}")),
        }
        seed += 1;
    }
    o.check(
        errors.is_empty() && trivial_cm >= 100,
        format!("C(M) = 0 ⇒ Z2 symmetric: {trivial_cm} instances with C(M) = 0 among {seed} {errors:?}"),
    );
    o
}

fn criterion_12() -> Outcome {
    let mut o = Outcome::new();
    o.note("no results are listed as out of reach");
    o
}

fn main() {
    let criteria: [fn() -> Outcome; 12] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
        criterion_12,
    ];
    let mut failed = 0;
    for (k, c) in criteria.iter().enumerate() {
        let o = c();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {}: {} — {}", k + 1, if o.pass { "PASS" } else { "FAIL" }, o.details.join("; "));
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
