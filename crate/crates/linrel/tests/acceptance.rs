//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line. Run with `cargo test -p linrel --test acceptance --
//! --nocapture` to see the lines and timings.

use std::time::Instant;

use linrel::characterize;
use linrel::generate::{self, GenConfig};
use linrel::relation::{pairing_defect, LinearRelation, OperatorSpec};
use linrel::resolvent::{self, NORM_SLACK};
use linrel::subspace::{orthonormal_basis, Subspace};
use linrel::verify::{run_campaign, CampaignConfig, TheoremId};
use linrel::{FieldTag, Scalar, TolerancePolicy};
use nalgebra::{Complex, DMatrix};

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

const FIELDS: [FieldTag; 2] = [FieldTag::Real, FieldTag::Complex];

fn report(criterion: &str, started: Instant, detail: &str) {
    println!(
        "ACCEPTANCE {criterion}: PASS ({:.2}s) {detail}",
        started.elapsed().as_secs_f64()
    );
}

fn campaign(theorem: TheoremId, field: FieldTag, trials: usize, seed: u64) -> CampaignConfig {
    CampaignConfig {
        theorem,
        trials,
        seed,
        field,
        max_dim: 6,
        grid: None,
        tol: tol(),
    }
}

/// Criterion 1: on 500 random total operators per field, the adjoint
/// computed through the flip-orthocomplement route coincides with the
/// conjugate-transpose graph within 1e-8.
fn adjoint_oracle_equivalence<T: Scalar>(seed: u64) {
    let t = tol();
    for trial in 0..500u64 {
        let cfg = GenConfig::new(seed, T::FIELD).with_trial(trial);
        let h = 1 + (trial % 6) as usize;
        let k = 1 + ((trial / 6) % 6) as usize;
        let (s, conj_transpose) = generate::random_adjoint_pair::<T>(&cfg, h, k, &t).unwrap();
        let eq = s
            .adjoint(&t)
            .graph()
            .equals(conj_transpose.graph(), &t)
            .unwrap();
        assert!(
            eq.verdict,
            "trial {trial} ({h}x{k}): projector difference above 1e-8: {}",
            eq.trace
        );
    }
}

#[test]
fn criterion_01_adjoint_oracle() {
    let started = Instant::now();
    adjoint_oracle_equivalence::<f64>(101);
    adjoint_oracle_equivalence::<Complex<f64>>(102);
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed <= 5.0, "runtime budget exceeded: {elapsed:.2}s > 5s");
    report("1 adjoint-oracle", started, "500 operators per field, <= 1e-8");
}

/// Criterion 2: on 500 random relations (partial operators and
/// pure-multivalued relations included), the preliminaries hold within 1e-8:
/// S** = S, S* ⊕ V(S) = K × H, ker S* = (ran S)^⊥ and mul S* = (dom S)^⊥.
fn identity_suite<T: Scalar>(seed: u64, trials: u64) {
    let t = tol();
    for trial in 0..trials {
        let cfg = GenConfig::new(seed, T::FIELD).with_trial(trial);
        let h = 1 + (trial % 5) as usize;
        let k = 1 + ((trial / 5) % 5) as usize;
        let r: LinearRelation<T> = match trial % 3 {
            0 => generate::random_relation(&cfg, h, k, (trial as usize) % (h + k + 1), &t).unwrap(),
            1 => {
                let total = generate::random_adjoint_pair::<T>(&cfg, h, k, &t).unwrap().0;
                generate::restrict_to_partial(&total, &cfg, (trial as usize) % (h + 1), &t).unwrap()
            }
            _ => {
                // pure multivalued: {0} × (random subspace of K)
                let sub = generate::random_subspace::<T>(&cfg, k, 1 + (trial as usize) % k, &t)
                    .unwrap();
                let mut spanners = DMatrix::zeros(h + k, sub.dim());
                spanners.rows_mut(h, k).copy_from(sub.basis());
                LinearRelation::from_spanners(h, k, &spanners, &t).unwrap()
            }
        };

        let adj = r.adjoint(&t);
        let back = adj.adjoint(&t);
        assert!(
            back.graph().equals(r.graph(), &t).unwrap().verdict,
            "trial {trial}: S** != S"
        );

        let flip = r.flip_v();
        let join = adj.graph().sum(flip.graph(), &t).unwrap();
        let meet = adj.graph().intersect(flip.graph(), &t).unwrap();
        assert!(
            join.equals(&Subspace::full(h + k), &t).unwrap().verdict,
            "trial {trial}: S* + V(S) not the whole product space"
        );
        assert_eq!(meet.dim(), 0, "trial {trial}: S* meets V(S)");

        let parts = r.parts(&t);
        let adj_parts = adj.parts(&t);
        assert!(
            adj_parts
                .ker
                .equals(&parts.ran.complement(&t), &t)
                .unwrap()
                .verdict,
            "trial {trial}: ker S* != (ran S)^perp"
        );
        assert!(
            adj_parts
                .mul
                .equals(&parts.dom.complement(&t), &t)
                .unwrap()
                .verdict,
            "trial {trial}: mul S* != (dom S)^perp"
        );
    }
}

#[test]
fn criterion_02_preliminary_identities() {
    let started = Instant::now();
    identity_suite::<f64>(201, 250);
    identity_suite::<Complex<f64>>(202, 250);
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed <= 10.0, "runtime budget exceeded: {elapsed:.2}s > 10s");
    report("2 identity-suite", started, "500 relations, <= 1e-8");
}

fn assert_equivalence_campaign(
    theorem: TheoremId,
    seed: u64,
    need_counts: bool,
) -> (usize, usize) {
    let mut skipped = 0;
    let mut checked = 0;
    let mut tp = 0;
    let mut tn = 0;
    for field in FIELDS {
        let summary = run_campaign(&campaign(theorem, field, 250, seed)).unwrap();
        assert!(
            summary.passed(),
            "{} over {field}: {:?}",
            theorem.canonical(),
            summary
                .violations
                .iter()
                .map(|v| (v.trial, v.detail.clone()))
                .collect::<Vec<_>>()
        );
        skipped += summary.skipped;
        checked += summary.checked;
        tp += summary.true_positive;
        tn += summary.true_negative;
    }
    let skipped_fraction = skipped as f64 / (skipped + checked) as f64;
    assert!(
        skipped_fraction < 0.05,
        "{}: guard band skipped {skipped_fraction:.3}",
        theorem.canonical()
    );
    if need_counts {
        assert!(tp >= 100, "{}: only {tp} true positives", theorem.canonical());
        assert!(tn >= 100, "{}: only {tn} true negatives", theorem.canonical());
    }
    (tp, tn)
}

/// Criterion 3: the three Arens equivalences agree statement-by-statement on
/// every decisive instance, with under 5% guard-band skips.
#[test]
fn criterion_03_arens_equivalences() {
    let started = Instant::now();
    assert_equivalence_campaign(TheoremId::Arens, 301, false);
    assert_equivalence_campaign(TheoremId::ArensEq, 302, false);
    assert_equivalence_campaign(TheoremId::ArensEqIncl, 303, false);
    report("3 arens-equivalences", started, "3 x 500 instances");
}

/// Criterion 4: the adjoint-identification and symmetric-adjoint
/// biconditionals hold on every decisive instance, with at least 100 true
/// positives and 100 true negatives each.
#[test]
fn criterion_04_identification_theorems() {
    let started = Instant::now();
    let (tp_a, tn_a) = assert_equivalence_campaign(TheoremId::AdjointIdent, 401, true);
    let (tp_s, tn_s) = assert_equivalence_campaign(TheoremId::SymmetricAdjoint, 402, true);
    report(
        "4 identification-theorems",
        started,
        &format!("adjoint-ident {tp_a}+/{tn_a}-, symmetric-adjoint {tp_s}+/{tn_s}-"),
    );
}

/// Criterion 5: the two-variable range theorem, plus its worked
/// counterexample: S partial e1 -> e2 against the total zero operator
/// collapses ran(I + T0·S0) to {0} and fails the oracle.
#[test]
fn criterion_05_von_neumann() {
    let started = Instant::now();
    let (tp, tn) = assert_equivalence_campaign(TheoremId::VonNeumann, 501, true);

    let t = tol();
    let e1 = orthonormal_basis(&DMatrix::from_column_slice(2, 1, &[1.0, 0.0]), &t);
    let s = LinearRelation::from_operator(
        &OperatorSpec {
            matrix: DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]),
            domain: Some(e1),
        },
        &t,
    )
    .unwrap();
    let zero = LinearRelation::<f64>::zero_total(2, 2, &t);
    let s0 = s.intersect(&zero.adjoint(&t), &t).unwrap();
    let t0 = zero.intersect(&s.adjoint(&t), &t).unwrap();
    let shifted = t0
        .compose(&s0, &t)
        .unwrap()
        .add_scalar(1.0, &t)
        .unwrap();
    assert_eq!(
        shifted.parts(&t).ran.dim(),
        0,
        "counterexample: ran(I + T0 S0) must be {{0}}"
    );
    assert!(!characterize::oracle_mutually_adjoint(&s, &zero, &t).verdict);
    let rep = characterize::von_neumann_ranges(&s, &zero, &t).unwrap();
    assert!(!rep.overall.verdict);

    report(
        "5 von-neumann",
        started,
        &format!("{tp}+/{tn}-, worked counterexample confirmed"),
    );
}

/// Criterion 6: one-way implications never fire falsely, and the zero
/// operator witnesses that the converses genuinely fail.
#[test]
fn criterion_06_one_way_implications() {
    let started = Instant::now();
    for (theorem, seed) in [
        (TheoremId::GenStone, 601),
        (TheoremId::SurjectivePair, 602),
        (TheoremId::SelfadjointRange, 603),
        (TheoremId::Stone, 604),
    ] {
        for field in FIELDS {
            let summary = run_campaign(&campaign(theorem, field, 250, seed)).unwrap();
            assert!(
                summary.passed(),
                "{} over {field}: {:?}",
                theorem.canonical(),
                summary
                    .violations
                    .iter()
                    .map(|v| v.detail.clone())
                    .collect::<Vec<_>>()
            );
        }
    }

    // converse failure witnesses: conditions false, conclusion true
    let t = tol();
    let z = LinearRelation::<f64>::zero_total(2, 2, &t);
    for rep in [
        characterize::gen_stone(&z, &z, &t).unwrap(),
        characterize::surjective_pair(&z, &z, &t).unwrap(),
        characterize::selfadjoint_via_range(&z, &t).unwrap(),
        characterize::stone_surjective_symmetric(&z, &t).unwrap(),
    ] {
        assert!(
            !rep.overall.verdict,
            "{}: zero operator should fail the conditions",
            rep.criterion_id
        );
        assert!(
            rep.conclusion_verified.as_ref().unwrap().verdict,
            "{}: zero operator is nevertheless self-adjoint",
            rep.criterion_id
        );
    }
    report("6 one-way-implications", started, "4 x 500 instances, converses witnessed");
}

/// Criterion 7: the resolvent criterion accepts mutually adjoint pairs at
/// every default grid point, rejects pairing defects >= 0.1, and matches the
/// closed forms.
fn nieminen_accepts_clean<T: Scalar>(seed: u64, trials: u64) {
    let t = tol();
    let grid = resolvent::default_grid();
    for trial in 0..trials {
        let cfg = GenConfig::new(seed, T::FIELD).with_trial(trial);
        let n = 1 + (trial % 6) as usize;
        let m = 1 + ((trial + trial / 6) % 6) as usize;
        let (s, t_rel) = generate::random_adjoint_pair::<T>(&cfg, n, m, &t).unwrap();
        let rep = resolvent::nieminen_criterion(&s, &t_rel, &grid, &t).unwrap();
        assert!(rep.overall.verdict, "clean pair rejected at trial {trial}");
        for p in &rep.probes {
            let norm = p.norm.expect("clean pairs are everywhere resolvable");
            assert!(
                norm <= p.bound + NORM_SLACK,
                "trial {trial}, t = {}: {norm} > {} + slack",
                p.t,
                p.bound
            );
        }
    }
}

fn nieminen_rejects_perturbed<T: Scalar>(seed: u64, trials: u64) {
    let t = tol();
    let grid = resolvent::default_grid();
    for trial in 0..trials {
        let cfg = GenConfig::new(seed, T::FIELD).with_trial(trial);
        let n = 1 + (trial % 6) as usize;
        let (s, t_rel) = generate::random_adjoint_pair::<T>(&cfg, n, n, &t).unwrap();
        let p = generate::perturb_pairing(&cfg, &s, &t_rel, 0.1, &t).unwrap();
        let defect = pairing_defect(&p.s, &p.t, &t).unwrap();
        assert!(defect >= 0.1 - 1e-9, "trial {trial}: defect {defect}");
        let rep = resolvent::nieminen_criterion(&p.s, &p.t, &grid, &t).unwrap();
        assert!(
            !rep.overall.verdict,
            "trial {trial}: defect {defect} passed every grid point"
        );
    }
}

#[test]
fn criterion_07_nieminen() {
    let started = Instant::now();
    nieminen_accepts_clean::<f64>(701, 100);
    nieminen_accepts_clean::<Complex<f64>>(702, 100);
    nieminen_rejects_perturbed::<f64>(703, 100);
    nieminen_rejects_perturbed::<Complex<f64>>(704, 100);

    // closed form S = T = [a]: every probe norm is 1/sqrt(t^2 + a^2)
    let t = tol();
    for a in [0.5, 1.0, 2.0, 3.75] {
        let s = LinearRelation::from_total_matrix(&DMatrix::from_row_slice(1, 1, &[a]), &t);
        let rep = resolvent::nieminen_criterion(&s, &s, &resolvent::default_grid(), &t).unwrap();
        assert!(rep.overall.verdict);
        for p in &rep.probes {
            let expected = 1.0 / (p.t * p.t + a * a).sqrt();
            let got = p.norm.unwrap();
            assert!(
                (got - expected).abs() <= 1e-10,
                "a = {a}, t = {}: {got} vs {expected}",
                p.t
            );
        }
    }

    // zero pair: norm * |t| = 1 exactly
    for n in [1, 3] {
        let z = LinearRelation::<f64>::zero_total(n, n, &t);
        let rep = resolvent::nieminen_criterion(&z, &z, &resolvent::default_grid(), &t).unwrap();
        for p in &rep.probes {
            assert!((p.norm.unwrap() * p.t.abs() - 1.0).abs() <= 1e-12);
        }
    }
    report(
        "7 nieminen",
        started,
        "200 clean pass, 200 defect>=0.1 fail, closed forms to 1e-10/1e-12",
    );
}

/// Criterion 8: 100 clean instances of each corollary family pass, 100
/// perturbed instances of each fail.
fn corollary_family<T: Scalar>(
    seed: u64,
    trials: u64,
    clean: impl Fn(&GenConfig, usize, &TolerancePolicy) -> LinearRelation<T>,
    perturb: impl Fn(&GenConfig, &LinearRelation<T>, &TolerancePolicy) -> LinearRelation<T>,
    run: impl Fn(&LinearRelation<T>, &TolerancePolicy) -> resolvent::NieminenReport,
    family: &str,
) {
    let t = tol();
    let min_dim = match T::FIELD {
        FieldTag::Real => 2,
        FieldTag::Complex => 1,
    };
    for trial in 0..trials {
        let cfg = GenConfig::new(seed, T::FIELD).with_trial(trial);
        let n = min_dim + (trial as usize) % (7 - min_dim);
        let base = clean(&cfg, n, &t);
        let rep = run(&base, &t);
        assert!(
            rep.overall.verdict,
            "{family} trial {trial}: clean instance rejected"
        );
        let broken = perturb(&cfg, &base, &t);
        let rep = run(&broken, &t);
        assert!(
            !rep.overall.verdict,
            "{family} trial {trial}: perturbed instance accepted (defect {:.3e})",
            rep.pairing_defect
        );
    }
}

fn corollary_suite<T: Scalar>(seed: u64) {
    let grid = resolvent::default_grid();
    corollary_family::<T>(
        seed,
        50,
        |cfg, n, t| generate::random_symmetric(cfg, n, t).unwrap(),
        |cfg, s, t| generate::perturb_symmetric(cfg, s, 0.1, t).unwrap(),
        |s, t| resolvent::selfadjoint_nieminen(s, &grid, t).unwrap(),
        "hermitian",
    );
    corollary_family::<T>(
        seed + 1,
        50,
        |cfg, n, t| generate::random_skew_adjoint(cfg, n, t).unwrap(),
        |cfg, s, t| generate::perturb_skew_adjoint(cfg, s, 0.1, t).unwrap(),
        |s, t| resolvent::skewadjoint_nieminen(s, &grid, t).unwrap(),
        "skew",
    );
    corollary_family::<T>(
        seed + 2,
        50,
        |cfg, n, t| generate::random_unitary(cfg, n, t).unwrap(),
        |cfg, u, t| generate::perturb_unitary(cfg, u, 0.1, t).unwrap(),
        |u, t| resolvent::unitary_nieminen(u, &grid, t).unwrap(),
        "unitary",
    );
}

#[test]
fn criterion_08_corollary_specializations() {
    let started = Instant::now();
    corollary_suite::<f64>(801);
    corollary_suite::<Complex<f64>>(804);
    report(
        "8 corollaries",
        started,
        "hermitian/skew/unitary: 100 clean pass, 100 perturbed fail each",
    );
}

/// Criterion 9: -(M + 1)(M - 1) equals diag(I + TS, I + ST) within 1e-10 on
/// mutually adjoint pairs, relation calculus against raw matrix arithmetic.
fn block_identity<T: Scalar>(seed: u64, trials: u64) {
    let t = tol();
    for trial in 0..trials {
        let cfg = GenConfig::new(seed, T::FIELD).with_trial(trial);
        let h = 1 + (trial % 6) as usize;
        let k = 1 + ((trial + 2 * (trial / 6)) % 6) as usize;
        let (s, t_rel) = generate::random_adjoint_pair::<T>(&cfg, h, k, &t).unwrap();
        let m = resolvent::build_matrix(&s, &t_rel, &t).unwrap();
        let one = T::one();
        let product = m
            .relation()
            .add_scalar(one, &t)
            .unwrap()
            .compose(&m.relation().add_scalar(-one, &t).unwrap(), &t)
            .unwrap()
            .neg()
            .to_matrix(&t)
            .unwrap();
        let a = s.to_matrix(&t).unwrap();
        let b = t_rel.to_matrix(&t).unwrap();
        let mut expected = DMatrix::<T>::zeros(h + k, h + k);
        expected
            .view_mut((0, 0), (h, h))
            .copy_from(&(DMatrix::identity(h, h) + &b * &a));
        expected
            .view_mut((h, h), (k, k))
            .copy_from(&(DMatrix::identity(k, k) + &a * &b));
        let err = linrel::subspace::operator_norm(&(product - expected));
        assert!(err <= 1e-10, "trial {trial}: block identity off by {err:.3e}");
    }
}

#[test]
fn criterion_09_block_identity() {
    let started = Instant::now();
    block_identity::<f64>(901, 50);
    block_identity::<Complex<f64>>(902, 50);
    report("9 block-identity", started, "100 pairs within 1e-10");
}

/// Criterion 10: repeating a verification run with identical seed and flags
/// produces byte-identical machine-format reports.
#[test]
fn criterion_10_determinism() {
    let started = Instant::now();

    // in-process: summaries serialize identically
    for theorem in [TheoremId::VonNeumann, TheoremId::Nieminen, TheoremId::Arens] {
        let cc = campaign(theorem, FieldTag::Real, 60, 1001);
        let a = serde_json::to_vec(&run_campaign(&cc).unwrap()).unwrap();
        let b = serde_json::to_vec(&run_campaign(&cc).unwrap()).unwrap();
        assert_eq!(a, b, "{} summary must be reproducible", theorem.canonical());
    }

    // end to end through the binary
    let run = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_linrel"))
            .args([
                "verify-theorem",
                "symmetric-adjoint",
                "--trials",
                "50",
                "--seed",
                "77",
                "--field",
                "complex",
                "--format",
                "machine",
            ])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(
        first.stdout, second.stdout,
        "machine-format reports must be byte-identical"
    );
    report("10 determinism", started, "byte-identical reruns");
}
