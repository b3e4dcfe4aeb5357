//! Acceptance suite: one test per headline guarantee of the toolkit, each
//! pinned at its advertised tolerance, on top of the public library API and
//! the shipped binary.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

use num_complex::Complex64;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use billiard_lab_core::billiard::{invariance_residual, jacobian_determinant, Ellipse};
use billiard_lab_core::invariants::curve_invariants;
use billiard_lab_core::polycore::{
    homogenize, parse_polynomial, rat, BivariatePolynomial, Rat,
};
use billiard_lab_core::puiseux::{branches_at_infinity, puiseux_branches};
use billiard_lab_core::symmetry::{
    epsilon_even_test, hf_constancy, relative_symmetry_report, sample_curve_points, LeafContext,
};
use billiard_lab_core::theorems::{
    audit_collection, certify_conic, certify_conic_affine, default_scan_coefficients,
    default_t_sequence, lemma_scan, verify_tangent_asymptotics, ConicVerdict, GermTriple,
    TrackedCoordinate,
};

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn parse(s: &str) -> BivariatePolynomial {
    parse_polynomial(s, ("x", "y")).unwrap()
}

/// The quadratic form x^2/a^2 + y^2/b^2 with exact rational squares.
fn quadratic_form(a2: Rat, b2: Rat) -> BivariatePolynomial {
    BivariatePolynomial::from_terms(&[
        ((2, 0), rat(1, 1) / a2),
        ((0, 2), rat(1, 1) / b2),
    ])
}

fn random_outside_point(rng: &mut ChaCha8Rng, a: f64, b: f64) -> (f64, f64) {
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    let u = rng.gen_range(1.2..3.0);
    (a * u * theta.cos(), b * u * theta.sin())
}

// criterion 1: elliptic invariance at 1e-8 over 10^3 points per ellipse
#[test]
fn elliptic_invariance_sweep() {
    let cases = [
        (1.0, 1.0, rat(1, 1), rat(1, 1)),
        (2.0, 1.0, rat(4, 1), rat(1, 1)),
        (3.0, 0.5, rat(9, 1), rat(1, 4)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (a, b, a2, b2) in cases {
        let ellipse = Ellipse::new(a, b);
        let f = quadratic_form(a2, b2);
        let mut max_residual = 0.0f64;
        for _ in 0..1000 {
            let p = random_outside_point(&mut rng, a, b);
            max_residual = max_residual.max(invariance_residual(&ellipse, &f, p, 1e-12).unwrap());
        }
        assert!(
            max_residual <= 1e-8,
            "ellipse ({a},{b}): max residual {max_residual}"
        );
    }
}

// criterion 2: Jacobian determinant within 1e-5 of 1 at 100 points each
#[test]
fn area_preservation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (a, b) in [(1.0, 1.0), (2.0, 1.0)] {
        let curve = Ellipse::new(a, b);
        let mut checked = 0;
        while checked < 100 {
            let p = random_outside_point(&mut rng, a, b);
            // skip stencils straddling a tangency discontinuity
            let Ok(det) = jacobian_determinant(&curve, p, 1e-5) else {
                continue;
            };
            assert!((det - 1.0).abs() <= 1e-5, "det {det} at {p:?}");
            checked += 1;
        }
    }
}

// criterion 3: H(F) constant on conics, nonconstant on a quartic level set
#[test]
fn skew_hessian_constancy() {
    let circle = parse("x^2 + y^2 - 1");
    let ctx = LeafContext::new(circle.clone(), BivariatePolynomial::constant(rat(1, 1)), 1)
        .unwrap();
    let pts = sample_curve_points(&circle, (c(1.0, 0.0), c(0.0, 0.0)), 40, c(0.15, 0.0), 1e-12)
        .unwrap();
    let (mean, dev) = hf_constancy(&ctx, &pts, 1e-9).unwrap();
    assert!((mean - c(8.0, 0.0)).norm() < 1e-10);
    assert!(dev < 1e-10);

    let parabola = parse("y - x^2");
    let ctx = LeafContext::new(parabola.clone(), BivariatePolynomial::constant(rat(1, 1)), 1)
        .unwrap();
    let pts = sample_curve_points(&parabola, (c(0.0, 0.0), c(0.0, 0.0)), 40, c(0.2, 0.0), 1e-12)
        .unwrap();
    let (mean, dev) = hf_constancy(&ctx, &pts, 1e-9).unwrap();
    assert!((mean - c(-2.0, 0.0)).norm() < 1e-10);
    assert!(dev < 1e-10);

    let quartic = parse("x^4 + y^4 - 1");
    let ctx = LeafContext::new(quartic.clone(), BivariatePolynomial::constant(rat(1, 1)), 1)
        .unwrap();
    let pts = sample_curve_points(&quartic, (c(1.0, 0.0), c(0.2, 0.0)), 20, c(0.2, 0.1), 1e-12)
        .unwrap();
    let (_, dev) = hf_constancy(&ctx, &pts, 1e-9).unwrap();
    assert!(dev > 1e-2, "quartic deviation only {dev}");
}

// criterion 4: odd eps-coefficients through eps^5 vanish on conic integrals
#[test]
fn epsilon_evenness() {
    for (psi, start) in [
        (parse("x^2 + y^2 - 1"), (c(1.0, 0.0), c(0.0, 0.0))),
        (parse("y - x^2"), (c(0.3, 0.0), c(0.09, 0.0))),
    ] {
        let ctx =
            LeafContext::new(psi.clone(), BivariatePolynomial::constant(rat(1, 1)), 1).unwrap();
        let pts = sample_curve_points(&psi, start, 20, c(0.17, 0.05), 1e-12).unwrap();
        for p in pts {
            let odd = epsilon_even_test(&ctx, p, 5, 1e-9).unwrap();
            assert!(
                odd.iter().all(|&v| v < 1e-10),
                "odd coefficients {odd:?} at {p:?}"
            );
        }
    }
    // a generic cubic integral has a genuine eps^3 term
    let cubic = parse("y - x^3 + x");
    let ctx = LeafContext::new(cubic.clone(), BivariatePolynomial::constant(rat(1, 1)), 1)
        .unwrap();
    let pts = sample_curve_points(&cubic, (c(0.7, 0.0), c(0.357, 0.0)), 5, c(0.2, 0.0), 1e-12)
        .unwrap();
    let max_eps3 = pts
        .iter()
        .map(|&p| epsilon_even_test(&ctx, p, 3, 1e-9).unwrap()[1])
        .fold(0.0f64, f64::max);
    assert!(max_eps3 > 1e-3, "eps^3 never exceeded {max_eps3}");
}

// criterion 5: circle-pair tangent multisets symmetric at 50 points each
#[test]
fn circle_pair_symmetry() {
    let circle = parse("x^2 + y^2 - 1");
    for big_r in [2i64, 3, 5] {
        let outer = BivariatePolynomial::from_terms(&[
            ((2, 0), rat(1, 1)),
            ((0, 2), rat(1, 1)),
            ((0, 0), rat(-big_r * big_r, 1)),
        ]);
        let gamma = &circle * &outer;
        let pts =
            sample_curve_points(&circle, (c(1.0, 0.0), c(0.0, 0.0)), 50, c(0.12, 0.03), 1e-12)
                .unwrap();
        for t in pts {
            let rep = relative_symmetry_report(&circle, &gamma, t, 1e-8).unwrap();
            assert!(rep.symmetric, "R={big_r}: asymmetric at {t:?}");
            assert!(rep.defect <= 1e-8, "R={big_r}: defect {}", rep.defect);
        }
    }
}

// criterion 6: Puiseux exponents exact, coefficients to 1e-8
#[test]
fn puiseux_exactness() {
    let origin = (c(0.0, 0.0), c(0.0, 0.0));

    let cusp = puiseux_branches(&parse("y^2 - x^3"), origin, 8, 1e-9).unwrap();
    assert_eq!(cusp.len(), 1);
    assert_eq!((cusp[0].q, cusp[0].p), (2, Some(3)));
    assert!((cusp[0].c - c(1.0, 0.0)).norm() < 1e-8);

    let node = puiseux_branches(&parse("y^2 - x^2*(1 + x)"), origin, 8, 1e-9).unwrap();
    assert_eq!(node.len(), 2);
    for b in &node {
        assert_eq!((b.q, b.p), (1, Some(2)));
    }

    let hyperbola = homogenize(&parse("x*y - 1"), 2).unwrap();
    let hb = branches_at_infinity(&hyperbola, 8, 1e-9).unwrap();
    assert_eq!(hb.len(), 2);
    for b in &hb {
        assert_eq!((b.q, b.p), (1, Some(2)));
        assert_eq!(b.transverse_to_linf, Some(true));
        assert_eq!(b.r(), Some(Rational64::from_integer(2)));
    }

    let cubic = homogenize(&parse("y - x^3"), 3).unwrap();
    let cb = branches_at_infinity(&cubic, 8, 1e-9).unwrap();
    assert_eq!(cb.len(), 1);
    assert_eq!((cb[0].q, cb[0].p), (2, Some(3)));
    assert_eq!(cb[0].transverse_to_linf, Some(false));
    assert!((cb[0].c.norm() - 1.0).abs() < 1e-8);
}

// criterion 7: kappa parity, the Hessian identity, Pluecker and genus on
// the corpus, within the 60 s budget
#[test]
fn invariant_identities_on_corpus() {
    let start = std::time::Instant::now();
    let corpus = [
        ("x*y - 1", 0),
        ("y^2 - x^2*(x + 1)", 0),
        ("y^2 - x^3", 0),
        ("y^2 - x^4 + x^5", 0),
        ("x^4 + y^4 - 1", 3),
    ];
    for (text, genus) in corpus {
        let f = parse(text);
        let report = curve_invariants(&f, 1e-9).unwrap();
        assert_eq!(report.genus, genus, "{text}");
        assert_eq!(report.pluecker_residual, 0, "{text}");
        for rec in &report.records {
            let s_excess: u64 = rec.branches.iter().map(|&(s, _)| (s - 1) as u64).sum();
            assert_eq!((rec.kappa - s_excess) % 2, 0, "{text}: kappa parity");
            let swap_sum: i64 = rec
                .branches
                .iter()
                .map(|&(s, ss)| ss as i64 - s as i64)
                .sum();
            assert_eq!(
                rec.hessian_h as i64,
                3 * rec.kappa as i64 + swap_sum,
                "{text}: Hessian identity at {:?}",
                rec.point
            );
        }
    }
    assert!(start.elapsed().as_secs() < 60);
}

// criterion 8: the root-power sum identity at 1e-8 on 100 random triples
#[test]
fn root_power_sum_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let q = rng.gen_range(1u32..20);
        let p = rng.gen_range(q + 1..=40);
        let cc = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let Ok(triple) = GermTriple::new(p, q, cc) else {
            continue;
        };
        let audit = audit_collection(&[triple], 1e-12).unwrap();
        assert!(
            audit.power_sum_residual <= 1e-8,
            "({p},{q},{cc}): residual {}",
            audit.power_sum_residual
        );
    }
}

// criterion 9: the scan isolates r = 2
#[test]
fn lemma_scan_isolates_r_two() {
    let rs: Vec<Rational64> = [(4, 3), (3, 2), (2, 1), (5, 2), (3, 1)]
        .iter()
        .map(|&(n, d)| Rational64::new(n, d))
        .collect();
    let rows = lemma_scan(&rs, 12, &default_scan_coefficients(), 1e-8).unwrap();
    let two = Rational64::from_integer(2);
    for row in &rows {
        if row.r == two {
            assert!(row.symmetric, "asymmetric at r=2: {row:?}");
            assert!(row.rpk1_residual <= 1e-8, "{row:?}");
        } else {
            assert!(!row.symmetric, "spurious symmetry: {row:?}");
            assert!(row.rpk1_residual >= 0.1, "{row:?}");
        }
    }
}

// criterion 10: axis-intersection factors of the cusp branch (t^2, t^3)
#[test]
fn tangent_asymptotics_of_the_cusp() {
    let f = parse("y^2 - x^3");
    let b = puiseux_branches(&f, (c(0.0, 0.0), c(0.0, 0.0)), 8, 1e-9)
        .unwrap()
        .into_iter()
        .next()
        .unwrap();
    let ts = default_t_sequence();

    // z-factor of the z-axis intersection is exactly 1/3
    let z_rep = verify_tangent_asymptotics(&b, &parse("y"), TrackedCoordinate::Z, &ts).unwrap();
    for factors in &z_rep.factors {
        for f in factors {
            assert!((f - c(1.0 / 3.0, 0.0)).norm() < 1e-9, "z factor {f}");
        }
    }

    // w-factor of the w-axis intersection converges to -1/2 with the error
    // decreasing over the last three t values
    let w_rep = verify_tangent_asymptotics(&b, &parse("x"), TrackedCoordinate::W, &ts).unwrap();
    for factors in &w_rep.factors {
        let errs: Vec<f64> = factors
            .iter()
            .map(|f| (f - c(-0.5, 0.0)).norm())
            .collect();
        let n = errs.len();
        assert!(errs[n - 1] < 1e-9, "w errors {errs:?}");
        assert!(errs[n - 1] <= errs[n - 2] + 1e-12 && errs[n - 2] <= errs[n - 3] + 1e-12);
    }
}

// criterion 11: frame-independent conic certification, no counterexamples
#[test]
fn conic_certification_in_random_frames() {
    use num_traits::Zero;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut counterexamples = 0;
    for conic in ["x*y - 1", "y - x^2"] {
        let f = parse(conic);
        let big_f = homogenize(&f, 2).unwrap();
        for _ in 0..10 {
            let m = loop {
                let cand: [[Rat; 3]; 3] = std::array::from_fn(|_| {
                    std::array::from_fn(|_| rat(rng.gen_range(-3i64..=3), 1))
                });
                let det = &cand[0][0] * (&cand[1][1] * &cand[2][2] - &cand[1][2] * &cand[2][1])
                    - &cand[0][1] * (&cand[1][0] * &cand[2][2] - &cand[1][2] * &cand[2][0])
                    + &cand[0][2] * (&cand[1][0] * &cand[2][1] - &cand[1][1] * &cand[2][0]);
                if !det.is_zero() {
                    break cand;
                }
            };
            let cert = certify_conic(&big_f.transform(&m), 1e-9).unwrap();
            if cert.verdict == ConicVerdict::CounterexampleFlag {
                counterexamples += 1;
            }
            assert_eq!(cert.verdict, ConicVerdict::ConicConsistent, "{conic}");
        }
    }
    for cubic in ["y^2 - x^2*(x + 1)", "y^2 - x^3"] {
        let cert = certify_conic_affine(&parse(cubic), 1e-9).unwrap();
        if cert.verdict == ConicVerdict::CounterexampleFlag {
            counterexamples += 1;
        }
        assert_eq!(cert.verdict, ConicVerdict::HypothesisViolated, "{cubic}");
    }
    assert_eq!(counterexamples, 0);
}

// criterion 12: every golden file reproduces byte-identically
#[test]
fn golden_files_are_deterministic() {
    let golden_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&str, &[&str]); 11] = [
        ("pluecker_nodal_cubic.json", &["pluecker", "--curve", "y^2 - x^2*(x+1)"]),
        ("puiseux_cusp.json", &["puiseux", "--curve", "y^2 - x^3"]),
        ("puiseux_hyperbola_infinity.json", &["puiseux", "--curve", "x*y - 1", "--infinity"]),
        (
            "invariants_tacnodal_quintic.json",
            &["invariants", "--curve", "y^2 - x^4 + x^5", "--projective"],
        ),
        ("audit_asymmetric.json", &["audit", "--r", "3/2", "--triples", "(3,2,1)"]),
        (
            "audit_symmetric.json",
            &["audit", "--r", "2", "--triples", "(2,1,1);(4,2,0.75)"],
        ),
        ("lemma_scan.json", &["lemma-scan", "--rs", "3/2,2,3", "--max-p", "6"]),
        (
            "asymptotics_cusp_z.json",
            &["asymptotics", "--curve", "y^2 - x^3", "--target", "y", "--coordinate", "z"],
        ),
        ("certify_hyperbola.json", &["certify", "--curve", "x*y - 1"]),
        ("certify_cuspidal_cubic.json", &["certify", "--curve", "y^2 - x^3"]),
        (
            "symmetry_circle_pair.json",
            &[
                "symmetry",
                "--psi",
                "x^2 + y^2 - 1",
                "--gamma",
                "(x^2 + y^2 - 1)*(x^2 + y^2 - 4)",
                "--n",
                "6",
            ],
        ),
    ];
    for (name, args) in cases {
        let expected = fs::read(golden_dir.join(name)).unwrap();
        for _ in 0..2 {
            let out = Command::new(env!("CARGO_BIN_EXE_billiard-lab"))
                .args(args)
                .output()
                .unwrap();
            assert_eq!(out.stdout, expected, "golden drift for {name}");
        }
    }
}
