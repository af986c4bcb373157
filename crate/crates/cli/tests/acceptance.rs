//! One line per acceptance criterion: `PASS`/`FAIL`, the criterion, the
//! measured time against its budget. Every criterion runs even if an earlier
//! one fails; the process exits nonzero if any did.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wittlab::automorphisms::{
    decode_zt, encode_zt, normalize_word, AutomorphismNF, CInftySeq, InnerWord, SigmaParams,
};
use wittlab::cohomology::{
    check_cocycle, compute_bgv_window, compute_h2_window, decompose_cocycle, make_alpha, make_beta,
    solve_coboundary,
};
use wittlab::derivations::{compute_der_space, compute_hom_i_to_l, make_outer_derivation};
use wittlab::scalar::{pow, ratio};
use wittlab::suite::{apply_generator, random_generator, random_sigma};
use wittlab::{
    check_jacobi, AlgebraKind, BasisSymbol, Element, LinearMapWindow, Rational, ReportDocument,
    Target, Window,
};

const SWEEP: i64 = 8;
const SAMPLES: usize = 120;
const SEED: u64 = 20_261_016;

fn w(n: i64) -> Window {
    Window::new(n).unwrap()
}

fn symbols() -> Vec<BasisSymbol> {
    (-SWEEP..=SWEEP)
        .flat_map(|n| [BasisSymbol::L(n), BasisSymbol::I(n)])
        .collect()
}

/// Same map on every swept symbol; both sides applied factor by factor.
fn same(lhs: &[SigmaParams], rhs: &[SigmaParams]) -> bool {
    let run = |chain: &[SigmaParams], x: &Element| {
        chain
            .iter()
            .rev()
            .fold(x.clone(), |acc, p| p.apply(&acc).unwrap())
    };
    symbols().into_iter().all(|s| {
        let x: Element = s.into();
        run(lhs, &x) == run(rhs, &x)
    })
}

fn matches_on_domain(d: &LinearMapWindow, reference: &LinearMapWindow) -> bool {
    d.images().all(|(s, img)| reference.image(s) == Some(img))
}

fn jacobi() -> Result<(), String> {
    for a in AlgebraKind::ALL {
        let r = check_jacobi(a, w(10));
        if !r.passed() {
            return Err(format!("{a}: {:?}", r.first_violation()));
        }
    }
    Ok(())
}

fn h2() -> Result<(), String> {
    for n in 3..=8 {
        let r = compute_h2_window(AlgebraKind::W, w(n), 0).map_err(|e| e.to_string())?;
        if r.h2_dim != 2 {
            return Err(format!("N={n}: h2_dim {}", r.h2_dim));
        }
        let mut coeffs = Vec::new();
        for b in &r.basis {
            let d = decompose_cocycle(b).map_err(|e| e.to_string())?;
            if !d.in_span() {
                return Err(format!("N={n}: nonzero residual"));
            }
            coeffs.push((d.alpha_coeff, d.beta_coeff));
        }
        if &coeffs[0].0 * &coeffs[1].1 == &coeffs[0].1 * &coeffs[1].0 {
            return Err(format!("N={n}: representatives do not span α, β"));
        }
        for d in (-3i64..=3).filter(|d| *d != 0 && d.abs() <= n) {
            let r = compute_h2_window(AlgebraKind::W, w(n), d).map_err(|e| e.to_string())?;
            if r.h2_dim != 0 {
                return Err(format!("N={n}, degree {d}: h2_dim {}", r.h2_dim));
            }
        }
    }
    Ok(())
}

fn bgv() -> Result<(), String> {
    for n in 3..=8 {
        let r = compute_bgv_window(w(n)).map_err(|e| e.to_string())?;
        if r.dimension != 0 {
            return Err(format!("N={n}: dimension {}", r.dimension));
        }
    }
    Ok(())
}

fn alpha_beta() -> Result<(), String> {
    for (name, form) in [("α", make_alpha(w(8))), ("β", make_beta(w(8)))] {
        let c = check_cocycle(&form);
        if !c.passed() || c.triples_checked == 0 {
            return Err(format!("{name}: {} defects", c.violations.len()));
        }
        match solve_coboundary(&form) {
            Ok(_) => return Err(format!("{name} is a coboundary")),
            Err(cert) if !cert.verify(&form) => return Err(format!("{name}: bad certificate")),
            Err(_) => {}
        }
    }
    Ok(())
}

fn derivations() -> Result<(), String> {
    for n in 4..=8 {
        let r = compute_der_space(AlgebraKind::W, Target::AlgebraValued, 0, w(n))
            .map_err(|e| e.to_string())?;
        let d = make_outer_derivation(AlgebraKind::W, w(n)).unwrap();
        if r.outer_dim != 1 || !matches_on_domain(&r.outer_basis[0], &d) {
            return Err(format!(
                "N={n}: outer_dim {} or representative is not D",
                r.outer_dim
            ));
        }
        for deg in [-2, -1, 1, 2] {
            let r = compute_der_space(AlgebraKind::W, Target::AlgebraValued, deg, w(n))
                .map_err(|e| e.to_string())?;
            if r.outer_dim != 0 {
                return Err(format!("N={n}, degree {deg}: outer_dim {}", r.outer_dim));
            }
        }
        let r = compute_der_space(AlgebraKind::W, Target::IValued, 0, w(n))
            .map_err(|e| e.to_string())?;
        if r.outer_dim != 1 || !matches_on_domain(&r.outer_basis[0], &d) {
            return Err(format!(
                "N={n}: I-valued outer_dim {} or representative is not D1",
                r.outer_dim
            ));
        }
    }
    Ok(())
}

fn wtilde_derivations() -> Result<(), String> {
    let r = compute_der_space(AlgebraKind::WTilde, Target::AlgebraValued, 0, w(6))
        .map_err(|e| e.to_string())?;
    if r.outer_dim == 1 {
        Ok(())
    } else {
        Err(format!("outer_dim {}", r.outer_dim))
    }
}

fn hom() -> Result<(), String> {
    for n in 3..=8 {
        let r = compute_hom_i_to_l(w(n)).map_err(|e| e.to_string())?;
        if r.dimension != 0 {
            return Err(format!("N={n}: dimension {}", r.dimension));
        }
    }
    Ok(())
}

fn relations() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..SAMPLES {
        let p1 = random_sigma(&mut rng);
        let p2 = random_sigma(&mut rng);
        let (e, l, a, mu) = (
            p1.epsilon(),
            p1.lambda().clone(),
            p1.a().clone(),
            p1.mu().clone(),
        );
        // Composition law, written out from the parameter formula.
        let law = SigmaParams::new(
            e * p2.epsilon(),
            &l + &mu * p2.lambda(),
            pow(&a, p2.epsilon()) * p2.a(),
            &mu * p2.mu(),
        )
        .unwrap();
        let inverse = SigmaParams::new(e, -&l / &mu, pow(&a, -e), mu.recip()).unwrap();
        let id = SigmaParams::identity();
        let pi = SigmaParams::pi(e).unwrap();
        let s_l = SigmaParams::shear(l.clone());
        let s_l2 = SigmaParams::shear(p2.lambda().clone());
        let s_amu = SigmaParams::scaling(a.clone(), mu.clone()).unwrap();
        let s_amu_inv = SigmaParams::scaling(a.recip(), mu.recip()).unwrap();
        let checks: [(&str, bool); 8] = [
            (
                "composition",
                same(std::slice::from_ref(&law), &[p1.clone(), p2.clone()])
                    && p1.compose(&p2) == law,
            ),
            (
                "inverse",
                same(&[p1.clone(), inverse.clone()], std::slice::from_ref(&id))
                    && same(&[inverse.clone(), p1.clone()], std::slice::from_ref(&id))
                    && p1.inverse() == inverse,
            ),
            (
                "π σ_λ = σ_λ π",
                same(&[pi.clone(), s_l.clone()], &[s_l.clone(), pi.clone()]),
            ),
            // π_ε is its own inverse.
            (
                "π⁻¹ σ_{a,μ} π = σ_{a^ε,μ}",
                same(
                    &[pi.clone(), s_amu.clone(), pi.clone()],
                    &[SigmaParams::scaling(pow(&a, e), mu.clone()).unwrap()],
                ),
            ),
            (
                "σ_{a,μ} σ_λ σ_{a,μ}⁻¹ = σ_{μλ}",
                same(
                    &[s_amu.clone(), s_l.clone(), s_amu_inv],
                    &[SigmaParams::shear(&mu * &l)],
                ),
            ),
            (
                "σ = π σ_λ σ_{a,μ}",
                same(
                    std::slice::from_ref(&p1),
                    &[pi.clone(), s_l.clone(), s_amu.clone()],
                ),
            ),
            (
                "σ_λ₁ σ_λ₂ = σ_{λ₁+λ₂}",
                same(
                    &[s_l.clone(), s_l2],
                    &[SigmaParams::shear(&l + p2.lambda())],
                ),
            ),
            ("identity", same(std::slice::from_ref(&id), &[])),
        ];
        if let Some((name, _)) = checks.iter().find(|c| !c.1) {
            return Err(format!("sample {i}: {name} fails for {p1} / {p2}"));
        }
    }
    Ok(())
}

fn normal_forms() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for i in 0..SAMPLES {
        let len = rng.gen_range(1..=6);
        let word: Vec<_> = (0..len).map(|_| random_generator(&mut rng)).collect();
        let nf = normalize_word(&word).map_err(|e| e.to_string())?;
        for s in symbols() {
            let x: Element = s.into();
            let seq = word
                .iter()
                .rev()
                .fold(x.clone(), |acc, g| apply_generator(g, &acc));
            if nf.apply(&x).unwrap() != seq {
                return Err(format!("word {i} ({word:?}) disagrees at {s}"));
            }
        }
    }
    Ok(())
}

fn random_zt(rng: &mut ChaCha8Rng) -> (InnerWord, Rational) {
    let mut word = InnerWord::new();
    for _ in 0..rng.gen_range(0..5) {
        let m = [-6, -4, -3, -1, 1, 2, 5, 7][rng.gen_range(0..8)];
        word.push(m, ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
            .unwrap();
    }
    (word, ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
}

fn encoding() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for i in 0..SAMPLES {
        let x = random_zt(&mut rng);
        let y = random_zt(&mut rng);
        let ex = encode_zt(&x.0, &x.1);
        // Slot rule checked independently of the implementation.
        let mut manual = CInftySeq::from_entries([(0, x.1.clone())]);
        for (m, k) in x.0.factors() {
            manual.accumulate(if m < 0 { m } else { m + 1 }, k.clone());
        }
        if ex != manual || decode_zt(&ex).unwrap() != x {
            return Err(format!("sample {i}: round trip"));
        }
        let (ws, ls) = decode_zt(&(&ex + &encode_zt(&y.0, &y.1))).unwrap();
        if encode_zt(&ws, &ls) != &ex + &encode_zt(&y.0, &y.1) {
            return Err(format!("sample {i}: encode∘decode"));
        }
        let fx = AutomorphismNF::new(x.0.clone(), SigmaParams::shear(x.1.clone()));
        let fy = AutomorphismNF::new(y.0.clone(), SigmaParams::shear(y.1.clone()));
        let prod = fx.compose(&fy);
        for s in symbols() {
            let v: Element = s.into();
            if prod.apply(&v).unwrap() != fx.apply(&fy.apply(&v).unwrap()).unwrap() {
                return Err(format!("sample {i}: product"));
            }
        }
        if prod.sigma != SigmaParams::shear(prod.sigma.lambda().clone())
            || encode_zt(&prod.inner, prod.sigma.lambda()) != &ex + &encode_zt(&y.0, &y.1)
        {
            return Err(format!("sample {i}: additivity"));
        }
    }
    Ok(())
}

fn cli_suite() -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_wittlab"))
        .args(["verify", "all", "--window", "8", "--json"])
        .env_remove("WITTLAB_WINDOW")
        .output()
        .map_err(|e| e.to_string())?;
    let doc: ReportDocument = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    if out.status.code() != Some(0) {
        return Err(format!("exit {:?}", out.status.code()));
    }
    match doc.results.iter().find(|r| !r.passed()) {
        Some(r) => Err(format!("{} failed", r.name)),
        None if doc.results.is_empty() => Err("empty report".into()),
        None => Ok(()),
    }
}

fn main() {
    type Check = fn() -> Result<(), String>;
    let criteria: [(&str, Check, u64); 11] = [
        (
            "Jacobi identity on W, W~, W(2,2), indices in [-10, 10]",
            jacobi,
            5,
        ),
        (
            "H²(W,C) window dimension 2 for N=3..8, spanned by α, β; 0 off degree 0",
            h2,
            10,
        ),
        ("B^L(I) = 0 for N=3..8", bgv, 2),
        (
            "α, β are cocycles at N=8 and not coboundaries",
            alpha_beta,
            5,
        ),
        (
            "Der(W,W): outer 1 = D at degree 0, 0 at ±1, ±2, N=4..8; I-valued outer 1 = D1",
            derivations,
            15,
        ),
        (
            "Der(W~,W~) degree 0 outer dimension 1 at N=6",
            wtilde_derivations,
            5,
        ),
        ("Hom(I, L) = 0 for N=3..8", hom, 2),
        (
            "composition law, inverse formula and generator relations",
            relations,
            5,
        ),
        (
            "normal form agrees with sequential application of random words",
            normal_forms,
            10,
        ),
        ("Zt encoding round trip and additivity", encoding, 1),
        (
            "`wittlab verify all --window 8 --json` exits 0",
            cli_suite,
            60,
        ),
    ];
    let mut failures = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(budget);
        let ok = result.is_ok() && in_time;
        failures += usize::from(!ok);
        let detail = match (&result, in_time) {
            (Err(e), _) => format!(" ({e})"),
            (Ok(()), false) => " (over time budget)".to_string(),
            _ => String::new(),
        };
        println!(
            "{} {name} [{:.2}s / {budget}s]{detail}",
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    }
    println!("{} of 11 criteria passed", 11 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
