//! End-to-end acceptance checks, one line per criterion.

mod common;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{generator_corpus, grid, halves, idx, pairs_up_to};
use locality::algebra::{all_partitions, Partition, StarAlgebra};
use locality::cli::{self, DescentResult, ReportEnvelope};
use locality::contexts::ContextPoset;
use locality::descent::{descent_map, sheaf_report, Descent};
use locality::independence::{
    cstar_independent, hierarchy_report, product_sense, schlieder, strong_locality, unit_law_failures, AlgebraPair,
    HierarchyReport, Limits, PartitionPair, Witness,
};
use locality::valuations::{
    product_extension, pushforward, sample_positive, valuation_independence_test, ProductExtension, RestrictionMap,
    Sampling, Valuation,
};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXAMPLE_BUDGET: Duration = Duration::from_secs(1);
const EXHAUSTIVE_BUDGET: Duration = Duration::from_secs(300);
const MAX_N: usize = 5;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lim() -> Limits {
    Limits::default()
}

fn over_scalars(p: &PartitionPair) -> PartitionPair {
    p.clone().with_meet(Partition::trivial(p.ambient_len())).unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name).to_string_lossy().into_owned()
}

fn envelope(cmd: &str, file: &str) -> Result<ReportEnvelope, String> {
    let out = cli::run(["locality", cmd, &fixture(file), "--json"]);
    if out.code != 0 {
        return Err(format!("{cmd} exited {}: {}", out.code, out.stderr));
    }
    serde_json::from_str(&out.stdout).map_err(|e| e.to_string())
}

fn four_point_example() -> Outcome {
    let pair: HierarchyReport = serde_json::from_value(envelope("check-pair", "four_point.json")?.result).unwrap();
    let descent: DescentResult = serde_json::from_value(envelope("descent", "four_point.json")?.result).unwrap();
    let m = &descent.descent.map;
    ensure((m.source_size, m.target_size) == (15, 4), format!("h: {} -> {}", m.source_size, m.target_size))?;
    ensure(!m.injective && m.surjective, "h should be a non-injective surjection")?;

    let c = idx(4, &[&[0, 3], &[1], &[2]]);
    let g = grid();
    ensure(c.overlap_join(g.left()).unwrap().is_trivial(), "C ∩ A is not trivial")?;
    ensure(c.overlap_join(g.right()).unwrap().is_trivial(), "C ∩ B is not trivial")?;
    ensure(pair.unit_law.is_false() && !descent.descent.unit_law, "unit law should fail")?;
    match pair.witnesses.get(&locality::independence::Condition::UnitLaw) {
        Some(Witness::Contexts { contexts }) => ensure(contexts.contains(&c), "witness misses {{a,d},{b},{c}}")?,
        other => return Err(format!("unexpected unit-law witness {other:?}")),
    }
    ensure(!descent.stability_violations.is_empty(), "no stability violations")?;
    ensure(pair.product_sense.is_true() && pair.strong_locality.is_true(), "independence should hold")?;
    Ok(format!("{} stability violations", descent.stability_violations.len()))
}

fn sheaf_equivalence() -> Outcome {
    let mut checked = 0;
    for p in pairs_up_to(MAX_N) {
        let r = sheaf_report(&p, &lim()).map_err(|e| e.to_string())?;
        if !r.extended_locality {
            continue;
        }
        checked += 1;
        let direct = r.h_iso && r.all_components_iso;
        let ap: AlgebraPair = p.clone().into();
        let characterized = cstar_independent(&ap).unwrap().verdict.is_true()
            && unit_law_failures(&p, &lim()).unwrap().is_empty();
        ensure(direct == characterized, format!("disagreement at {:?} / {:?}", p.left(), p.right()))?;
    }
    Ok(format!("{checked} extended-locality pairs"))
}

fn implication_chain() -> Outcome {
    let mut checked = 0;
    for p in pairs_up_to(MAX_N) {
        let r = hierarchy_report(&p.clone().into(), &lim()).map_err(|e| e.to_string())?;
        let chain = [r.product_sense, r.cstar_independent, r.strong_locality, r.extended_locality, r.microcausality];
        for w in chain.windows(2) {
            ensure(!w[0].is_true() || w[1].is_true(), format!("chain broken at {:?} / {:?}", p.left(), p.right()))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} pairs"))
}

fn schlieder_and_tensor_products() -> Outcome {
    let mut checked = 0;
    for p in pairs_up_to(MAX_N) {
        let ap: AlgebraPair = p.clone().into();
        ensure(
            schlieder(&ap).unwrap().verdict == product_sense(&ap).unwrap().verdict,
            format!("schlieder differs from product sense at {:?} / {:?}", p.left(), p.right()),
        )?;
        checked += 1;
    }
    let mut context_checked = 0;
    for p in pairs_up_to(4) {
        let ca = ContextPoset::enumerate(p.left()).unwrap();
        let cb = ContextPoset::enumerate(p.right()).unwrap();
        let tensor = ca.iter().all(|c| cb.iter().all(|d| c.common_refinement(d).unwrap().dim() == c.dim() * d.dim()));
        let ap: AlgebraPair = p.clone().into();
        ensure(
            tensor == cstar_independent(&ap).unwrap().verdict.is_true(),
            format!("context criterion differs at {:?} / {:?}", p.left(), p.right()),
        )?;
        context_checked += 1;
    }
    Ok(format!("{checked} pairs, {context_checked} with context pairs"))
}

fn adjoint_is_join() -> Outcome {
    let mut checked = 0;
    for p in pairs_up_to(MAX_N) {
        for q in [p.clone(), over_scalars(&p)] {
            let d = Descent::new(&q, &lim()).map_err(|e| e.to_string())?;
            let r = descent_map(&q, &lim()).map_err(|e| e.to_string())?;
            ensure(r.adjunction.adjoint_exists, "least-element adjoint missing")?;
            ensure(r.adjunction.adjoint == Some(d.join_table().unwrap()), "adjoint is not the join")?;
            checked += 1;
        }
    }
    let z = StarAlgebra::generated(2, &[common::ints(&[&[1, 0], &[0, -1]])]).unwrap();
    let x = StarAlgebra::generated(2, &[common::ints(&[&[0, 1], &[1, 0]])]).unwrap();
    let r = hierarchy_report(&AlgebraPair::matrices(z.clone(), x.clone()).unwrap(), &lim()).unwrap();
    ensure(r.microcausality.is_false(), "pauli pair reported microcausal")?;
    match r.witnesses.get(&locality::independence::Condition::Microcausality) {
        Some(Witness::Commutator { left, right, commutator, .. }) => {
            ensure(z.contains(left) && x.contains(right), "witness outside the algebras")?;
            ensure(*commutator == left.mul(right).sub(&right.mul(left)), "commutator is wrong")?;
            ensure(!commutator.is_zero(), "commutator is zero")?;
        }
        other => return Err(format!("unexpected witness {other:?}")),
    }
    Ok(format!("{checked} descent maps"))
}

fn valuation_characterization() -> Outcome {
    let mut checked = 0;
    for p in pairs_up_to(MAX_N) {
        let r = valuation_independence_test(&p, &lim(), Sampling::default()).map_err(|e| e.to_string())?;
        let ap: AlgebraPair = p.clone().into();
        ensure(
            r.independent == cstar_independent(&ap).unwrap().verdict.is_true(),
            format!("valuation test differs at {:?} / {:?}", p.left(), p.right()),
        )?;
        checked += 1;
    }
    let h = halves();
    match product_extension(&Valuation::uniform(h.left().clone()), &Valuation::uniform(h.right().clone()), &h).unwrap() {
        ProductExtension::Obstructed { left_block, right_block, .. } => {
            ensure((left_block, right_block) == (vec![2], vec![0]), "wrong witness blocks")?
        }
        ProductExtension::Extended(_) => return Err("uniform halves pair extended".into()),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut chains = 0;
    for n in 1..=4 {
        let all: Vec<Partition> = all_partitions(n).collect();
        for fine in &all {
            let mu = sample_positive(fine, &mut rng);
            for mid in all.iter().filter(|m| m.is_coarser(fine).unwrap()) {
                for coarse in all.iter().filter(|c| c.is_coarser(mid).unwrap()) {
                    let r1 = RestrictionMap::new(fine, mid).unwrap();
                    let r2 = RestrictionMap::new(mid, coarse).unwrap();
                    let direct = pushforward(&mu, &RestrictionMap::new(fine, coarse).unwrap()).unwrap();
                    let stepwise = pushforward(&pushforward(&mu, &r1).unwrap(), &r2).unwrap();
                    ensure(direct == stepwise && direct.total().is_one(), "pushforward is not functorial")?;
                    chains += 1;
                }
            }
        }
    }
    Ok(format!("{checked} pairs, {chains} chains"))
}

fn strong_locality_three_ways() -> Outcome {
    let mut checked = 0;
    for p in pairs_up_to(MAX_N) {
        let sl = strong_locality(&p.clone().into(), &lim()).unwrap().verdict.is_true();
        let r = descent_map(&over_scalars(&p), &lim()).map_err(|e| e.to_string())?;
        ensure(
            sl == r.adjunction.is_coreflector && sl == r.thickening.thickening,
            format!("disagreement at {:?} / {:?}", p.left(), p.right()),
        )?;
        checked += 1;
    }
    Ok(format!("{checked} pairs"))
}

fn matrix_invariants() -> Outcome {
    let mut checked = 0;
    for (n, gens) in generator_corpus() {
        let s = StarAlgebra::generated(n, &gens).map_err(|e| e.to_string())?;
        s.verify().map_err(|e| e.to_string())?;
        ensure(StarAlgebra::generated(n, s.basis()).unwrap() == s, "closure is not idempotent")?;
        let c = s.commutant();
        c.verify().map_err(|e| e.to_string())?;
        ensure(c.commutant() == s, format!("double commutant fails for n = {n}"))?;
        checked += 1;
    }
    Ok(format!("{checked} generated algebras"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 four-point example", four_point_example, EXAMPLE_BUDGET),
        ("2 sheaf decision routes agree", sheaf_equivalence, EXHAUSTIVE_BUDGET),
        ("3 implication chain", implication_chain, EXHAUSTIVE_BUDGET),
        ("4 schlieder and context tensor products", schlieder_and_tensor_products, EXHAUSTIVE_BUDGET),
        ("5 left adjoint is the join", adjoint_is_join, EXHAUSTIVE_BUDGET),
        ("6 valuation characterization", valuation_characterization, EXHAUSTIVE_BUDGET),
        ("7 strong locality, coreflector, thickening", strong_locality_three_ways, EXHAUSTIVE_BUDGET),
        ("8 matrix engine invariants", matrix_invariants, EXHAUSTIVE_BUDGET),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; took {elapsed:.2?} over {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} ({elapsed:.2?})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
