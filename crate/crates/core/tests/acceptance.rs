//! Acceptance criteria 1 to 8. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use symgap_core::homology::{Cochain, CochainComplex, Mask, OracleOutcome, DEFAULT_ORACLE_CAP};
use symgap_core::kostant::{harmonic_module, harmonic_modules, mu1_sign_pattern, HarmonicModule, HasseWord2};
use symgap_core::model::{
    build_canonical_model, is_sign_witness, split_real_sign_check, twistor_check, WeightLatticeSpec,
};
use symgap_core::parabolic::ParabolicData;
use symgap_core::prolong::{
    annihilator, annihilator_closed_form, canonical_span, mu2_holds, mu2_witness, upper_bounds,
};
use symgap_core::{AlgebraElement, ChevalleyAlgebra, Rational, Scalar, SimpleType};

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn pd(t: &str, cross: &[usize]) -> ParabolicData {
    let alg = Arc::new(ChevalleyAlgebra::of_type(t.parse().unwrap()).unwrap());
    ParabolicData::new(alg, cross).unwrap()
}

fn r(x: i64) -> Rational {
    Rational::from_int(x)
}

fn module(p: &ParabolicData, j: usize, k: usize) -> std::result::Result<HarmonicModule<Rational>, String> {
    harmonic_module(p, HasseWord2::new(j, k)).map_err(|e| e.to_string())
}

fn bound(p: &ParabolicData, j: usize, k: usize) -> std::result::Result<Option<usize>, String> {
    let b = upper_bounds::<Rational>(p).map_err(|e| e.to_string())?;
    Ok(b.modules
        .iter()
        .find(|m| m.module == HasseWord2::new(j, k))
        .and_then(|m| m.u_mu))
}

fn criterion1() -> Outcome {
    let p = pd("G2", &[2]);
    let m = module(&p, 2, 1)?;
    ensure!(m.mu_fw == vec![r(-7), r(4)], "μ in fundamental weights: {:?}", m.mu_fw);
    ensure!(m.mu_ints() == vec![-2, 1], "μ in simple roots: {:?}", m.mu_ints());
    ensure!(m.degree == 1, "Z(μ) = {}", m.degree);
    let cx = CochainComplex::new(&p).map_err(|e| e.to_string())?;
    let a0 = annihilator(&cx, &m.phi0).map_err(|e| e.to_string())?;
    // Z_1 + 2 Z_2 = 4 h_1 + 7 h_2 from the inverse Cartan matrix
    let alg = p.algebra();
    let ty = alg.simple_type();
    let z = AlgebraElement::from_terms(ty, [(alg.cartan_index(1), r(4)), (alg.cartan_index(2), r(7))]);
    let e = alg.root_vector::<Rational>(&[-1, 0]).map_err(|e| e.to_string())?;
    ensure!(a0 == canonical_span(&p, &[z, e], p.g0()), "a0 differs from <Z1+2Z2> + g_(-α1)");
    ensure!(a0 == annihilator_closed_form(&p, &m), "closed-form annihilator differs");
    let u = upper_bounds::<Rational>(&p).map_err(|e| e.to_string())?;
    ensure!(u.overall == Some(7), "U = {:?}", u.overall);
    let (am, rep) = build_canonical_model(&p, &m, 1).map_err(|e| e.to_string())?;
    ensure!(am.dim() == 7 && rep.checks["jacobi"].passed(), "model dim {} / jacobi {:?}", am.dim(), rep.checks["jacobi"]);
    let v = split_real_sign_check(&p, &m, WeightLatticeSpec::Adjoint).map_err(|e| e.to_string())?;
    ensure!(v.equivalent, "split-real check false");
    // diag(a, b) ∈ GL(2) with g_{-1} = S³R²: α1 = ε_a - ε_b, α2 = -3ε_a, so μ = -5ε_a + 2ε_b
    let (alpha1, alpha2) = ([1, -1], [-3, 0]);
    let gl2: Vec<i64> = (0..2).map(|i| -2 * alpha1[i] + alpha2[i]).collect();
    ensure!(gl2 == vec![-5, 2], "GL(2) character of μ: {gl2:?}");
    let (a, b) = (-1i8, 1i8);
    let ta1 = a * b;
    let ta2 = a; // a^{-3} has the sign of a
    let given = is_sign_witness(ty, WeightLatticeSpec::Adjoint, &m.mu_ints(), &[ta1, ta2]).map_err(|e| e.to_string())?;
    ensure!(given, "(a, b) = (-1, 1) is not a witness");
    Ok(format!("U = 7, witness (a,b) = (-1,1) maps to torus signs ({ta1},{ta2})"))
}

fn criterion2() -> Outcome {
    let p = pd("E8", &[8]);
    let m = module(&p, 8, 7)?;
    let want: Vec<Rational> = [0, 0, 0, 0, 0, -1, -1, 4].iter().map(|&x| r(x)).collect();
    ensure!(m.mu_fw == want, "μ = {:?}", m.mu_fw);
    ensure!(m.j_mu == vec![6, 7], "J_μ = {:?}", m.j_mu);
    ensure!(m.degree == 1, "Z(μ) = {}", m.degree);
    let (am, rep) = build_canonical_model(&p, &m, 1).map_err(|e| e.to_string())?;
    ensure!(rep.all_pass(), "model checks: {:?}", rep.first_failure());
    Ok(format!("dim f = {}, Jacobi exhaustive over {} triples", am.dim(), am.dim() * (am.dim() - 1) * (am.dim() - 2) / 6))
}

fn criterion3() -> Outcome {
    let mut out = Vec::new();
    for n in 3..=6usize {
        let p = pd(&format!("A{n}"), &[1]);
        let u = upper_bounds::<Rational>(&p).map_err(|e| e.to_string())?.overall;
        let want = (n - 1) * (n - 1) + 4;
        ensure!(u == Some(want), "A{n}/P1: U = {u:?}, expected {want}");
        let m = module(&p, 1, 2)?;
        let v = split_real_sign_check(&p, &m, WeightLatticeSpec::MatrixPgl).map_err(|e| e.to_string())?;
        ensure!(v.equivalent, "A{n}/P1: PGL check false");
        let mut eps = vec![1i8; n + 1];
        eps[0] = -1;
        eps[n] = -1;
        let ok = is_sign_witness(p.algebra().simple_type(), WeightLatticeSpec::MatrixPgl, &m.mu_ints(), &eps)
            .map_err(|e| e.to_string())?;
        ensure!(ok, "A{n}/P1: a1 = a_(n+1) = -1 is not a witness");
        out.push(want.to_string());
    }
    Ok(format!("U = {}", out.join(", ")))
}

fn criterion4() -> Outcome {
    let mut out = Vec::new();
    for mm in 2..=5usize {
        let p = pd(&format!("A{}", mm + 1), &[1, 2]);
        let m1 = module(&p, 2, 1)?;
        let m2 = module(&p, 1, 2)?;
        ensure!(m1.degree == 3 && m2.degree == 2, "m = {mm}: degrees {} {}", m1.degree, m2.degree);
        let (u1, u2) = (bound(&p, 2, 1)?, bound(&p, 1, 2)?);
        ensure!(u1 == Some(mm * mm + 5), "m = {mm}: U_μ1 = {u1:?}");
        ensure!(u2 == Some(mm * mm + 4), "m = {mm}: U_μ2 = {u2:?}");
        let ty = p.algebra().simple_type();
        let v = split_real_sign_check(&p, &m1, WeightLatticeSpec::MatrixPgl).map_err(|e| e.to_string())?;
        ensure!(v.equivalent, "m = {mm}: PGL check false");
        let mut eps = vec![1i8; mm + 2];
        eps[mm + 1] = -1;
        let ok = is_sign_witness(ty, WeightLatticeSpec::MatrixPgl, &m1.mu_ints(), &eps).map_err(|e| e.to_string())?;
        ensure!(ok, "m = {mm}: a_(m+2) = -1 is not a witness");
        if mm == 2 {
            let sl = split_real_sign_check(&p, &m1, WeightLatticeSpec::MatrixSl).map_err(|e| e.to_string())?;
            ensure!(!sl.equivalent, "m = 2: SL check should be false");
        }
        out.push(format!("m={mm}: {}/{}", mm * mm + 5, mm * mm + 4));
    }
    Ok(out.join(", "))
}

fn criterion5() -> Outcome {
    // n = 4 uses D3 = A3 with the conformal node at the middle of A3
    let cases = [(4, "A3", 2), (5, "B3", 1), (6, "D4", 1), (7, "B4", 1), (8, "D5", 1)];
    let mut out = Vec::new();
    for (n, t, node) in cases {
        let p = pd(t, &[node]);
        let u = upper_bounds::<Rational>(&p).map_err(|e| e.to_string())?.overall;
        let want = (n - 1) * (n - 2) / 2 + 6;
        ensure!(u == Some(want), "n = {n} ({t}/P{node}): U = {u:?}, expected {want}");
        out.push(format!("n={n}: {want}"));
    }
    Ok(out.join(", "))
}

fn criterion6() -> Outcome {
    let mut out = Vec::new();
    for n in 2..=5usize {
        let p = pd(&format!("A{}", n + 1), &[1, n + 1]);
        let b = upper_bounds::<Rational>(&p).map_err(|e| e.to_string())?;
        let regular: Vec<usize> = b.modules.iter().filter_map(|m| m.u_mu).collect();
        ensure!(regular.len() == 3, "n = {n}: {} regular modules", regular.len());
        ensure!(regular.iter().all(|&u| u == n * n + 4), "n = {n}: {regular:?}");
        out.push(format!("n={n}: {}", n * n + 4));
    }
    Ok(out.join(", "))
}

fn sweep_cases() -> Vec<(SimpleType, Vec<usize>)> {
    let mut types = Vec::new();
    for l in 1..=8 {
        types.push(format!("A{l}"));
    }
    for l in 2..=8 {
        types.push(format!("B{l}"));
        types.push(format!("C{l}"));
    }
    for l in 4..=8 {
        types.push(format!("D{l}"));
    }
    for t in ["E6", "E7", "E8", "F4", "G2"] {
        types.push(t.to_string());
    }
    let mut out = Vec::new();
    for t in types {
        let ty: SimpleType = t.parse().unwrap();
        let l = ty.rank();
        for i in 1..=l {
            out.push((ty, vec![i]));
            for j in i + 1..=l {
                out.push((ty, vec![i, j]));
            }
        }
    }
    out
}

fn random_wedge(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut m: Mask = 0;
    while (m.count_ones() as usize) < k {
        m |= 1 << rng.gen_range(0..n);
    }
    (0..n).filter(|&i| m >> i & 1 == 1).collect()
}

fn sweep_case(ty: SimpleType, cross: &[usize]) -> std::result::Result<(), String> {
    let alg = Arc::new(ChevalleyAlgebra::of_type(ty).map_err(|e| e.to_string())?);
    let p = ParabolicData::new(alg.clone(), cross).map_err(|e| e.to_string())?;
    let cx = CochainComplex::new(&p).map_err(|e| e.to_string())?;
    let tag = format!("{p}");
    let n = cx.dim_minus();
    let dim = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(dim as u64 * 131 + cross.iter().sum::<usize>() as u64);
    let e = |b: usize| AlgebraElement::basis(ty, b);

    // ∂² = 0 on C⁰ and sampled C¹; (∂*)² = 0 on sampled C³
    for b in 0..dim {
        let c = Cochain::from_wedge(&[], &e(b));
        let dd = cx.del(&cx.del(&c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure!(dd.is_zero(), "{tag}: ∂² ≠ 0 on C⁰ basis {b}");
    }
    for _ in 0..24 {
        let c = Cochain::from_wedge(&random_wedge(&mut rng, n, 1), &e(rng.gen_range(0..dim)));
        let dd = cx.del(&cx.del(&c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure!(dd.is_zero(), "{tag}: ∂² ≠ 0 on C¹");
    }
    if n >= 3 {
        for _ in 0..24 {
            let c = Cochain::from_wedge(&random_wedge(&mut rng, n, 3), &e(rng.gen_range(0..dim)));
            let dd = cx.delstar(&cx.delstar(&c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure!(dd.is_zero(), "{tag}: (∂*)² ≠ 0 on C³");
        }
    }

    for m in harmonic_modules::<Rational>(&p).map_err(|e| e.to_string())? {
        let w = m.word;
        ensure!(cx.laplacian(&m.phi0).map_err(|e| e.to_string())?.is_zero(), "{tag} {w}: □φ₀ ≠ 0");
        let direct = annihilator(&cx, &m.phi0).map_err(|e| e.to_string())?;
        ensure!(direct == annihilator_closed_form(&p, &m), "{tag} {w}: annihilator routes differ");
        if !m.is_regular() {
            continue;
        }
        if ty.rank() >= 3 {
            ensure!(mu1_sign_pattern(&m), "{tag} {w}: MU1 sign pattern fails for μ = {:?}", m.mu_ints());
            let h = mu2_witness(&p, &m.mu_ints()).map_err(|e| format!("{tag} {w}: {e}"))?;
            ensure!(mu2_holds(&p, &m.mu_ints(), &h), "{tag} {w}: MU2 witness rejected");
        }
        let tw = twistor_check(&p, &m).map_err(|e| format!("{tag} {w}: {e}"))?;
        ensure!(tw.descent.degree_p > 0, "{tag} {w}: Z̄(μ) = {}", tw.descent.degree_p);
        ensure!(tw.positive_dim_p == 0, "{tag} {w}: a₊ has dim {} after descent", tw.positive_dim_p);
        ensure!(tw.dim_q == tw.dim_p, "{tag} {w}: prolongation dim {} vs {} after descent", tw.dim_q, tw.dim_p);
    }
    Ok(())
}

fn criterion7() -> Outcome {
    let cases = sweep_cases();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(ty, cross)| sweep_case(*ty, cross).err())
        .collect();
    ensure!(failures.is_empty(), "{} failures, first: {}", failures.len(), failures[0]);
    Ok(format!("{} (type, parabolic) cases", cases.len()))
}

fn criterion8() -> Outcome {
    let cases = sweep_cases();
    let results: Vec<std::result::Result<Option<()>, String>> = cases
        .par_iter()
        .map(|(ty, cross)| {
            let alg = Arc::new(ChevalleyAlgebra::of_type(*ty).map_err(|e| e.to_string())?);
            let p = ParabolicData::new(alg, cross).map_err(|e| e.to_string())?;
            let cx = CochainComplex::new(&p).map_err(|e| e.to_string())?;
            match cx.hodge_oracle(DEFAULT_ORACLE_CAP).map_err(|e| e.to_string())? {
                OracleOutcome::Skipped { .. } => Ok(None),
                OracleOutcome::Computed(h) => {
                    let total: u64 = harmonic_modules::<Rational>(&p)
                        .map_err(|e| e.to_string())?
                        .iter()
                        .map(|m| m.dim)
                        .sum();
                    if !h.consistent() {
                        return Err(format!("{p}: Hodge routes disagree {h:?}"));
                    }
                    if h.ker_box as u64 != total {
                        return Err(format!("{p}: dim ker □ = {}, module sum = {total}", h.ker_box));
                    }
                    Ok(Some(()))
                }
            }
        })
        .collect();
    let errors: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    ensure!(errors.is_empty(), "{} failures, first: {}", errors.len(), errors[0]);
    let checked = results.iter().filter(|r| matches!(r, Ok(Some(())))).count();
    Ok(format!("{checked} cases under the cap, {} above it", cases.len() - checked))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("(G2,P2) end-to-end", criterion1),
        ("(E8,P8) module and canonical model", criterion2),
        ("projective (A_n,P1), n = 3..6", criterion3),
        ("ODE systems (A_(m+1),P_(1,2)), m = 2..5", criterion4),
        ("conformal (B,P1)/(D,P1), n = 4..8", criterion5),
        ("Legendrian contact (A_(n+1),P_(1,n+1)), n = 2..5", criterion6),
        ("property sweep up to rank 8", criterion7),
        ("Kostant oracle: dim ker □ = module dimension sum", criterion8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = f();
        let dt: Duration = t.elapsed();
        match res {
            Ok(detail) => println!("criterion {}: PASS  {name}  [{detail}] ({:.2} s)", i + 1, dt.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}  [{why}] ({:.2} s)", i + 1, dt.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
