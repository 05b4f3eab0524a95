use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Result};
use serde_json::json;
use twistlab_core::abelian::{Circle, FinAbGroup, ShortExactSeq};
use twistlab_core::cech::{self, cover_groupoid, Cochain, Cover, CoverGroupoid};
use twistlab_core::cocycle::Cocycle1;
use twistlab_core::groupoid::FiniteGroupoid;
use twistlab_core::io::{CochainDoc, CocycleDoc, CoverDoc, GroupoidDoc, SequenceDoc, TwistDoc};
use twistlab_core::star::{verify_characterization, verify_embedding, ObstructionContext, WideEmbedding};
use twistlab_core::twist::{self, ObstructionTwist, SampleMode};

use crate::{load, CechCmd, CechInput, CocycleCmd, Command, CstarCmd, GlobalOpts, Outcome, TwistCmd};

/// Random elements checked by `cstar embed-check` beyond the basis.
const DEFAULT_EMBED_SAMPLES: usize = 8;

#[derive(serde::Deserialize)]
struct EmbeddingDoc {
    sub: GroupoidDoc,
    ambient: GroupoidDoc,
    arrow_map: Vec<usize>,
}

fn groupoid(path: &Path) -> Result<Arc<FiniteGroupoid>> {
    Ok(Arc::new(load::<GroupoidDoc>(path)?.build()?))
}

fn cocycle(path: &Path) -> Result<Cocycle1<FinAbGroup>> {
    Ok(load::<CocycleDoc>(path)?.build()?)
}

fn sequence(path: &Path) -> Result<ShortExactSeq> {
    let seq = load::<SequenceDoc>(path)?.build()?;
    if let Some(v) = seq.check_exact().violations.first() {
        bail!("{}: sequence is not exact ({}: {})", path.display(), v.rule, v.detail);
    }
    Ok(seq)
}

fn obstruction(cocycle_path: &Path, seq_path: &Path) -> Result<ObstructionTwist> {
    let phi = cocycle(cocycle_path)?;
    let seq = sequence(seq_path)?;
    Ok(ObstructionTwist::new(&phi, &seq)?)
}

fn cech_input(input: &CechInput) -> Result<(Arc<Cover>, CoverGroupoid, Cochain<Circle>)> {
    let cover = Arc::new(load::<CoverDoc>(&input.cover)?.build()?);
    let lam: Cochain<Circle> = load::<CochainDoc>(&input.cochain)?.build(&cover)?;
    if lam.degree() != 1 {
        bail!("{}: a 1-cochain is required, found degree {}", input.cochain.display(), lam.degree());
    }
    if let Some((t, x)) = lam.cocycle_failure() {
        bail!(
            "{}: not a cocycle on sets {:?} at point {:?}",
            input.cochain.display(),
            t.iter().map(|&i| cover.set_name(i)).collect::<Vec<_>>(),
            cover.point_name(x)
        );
    }
    let base = cover_groupoid(&cover);
    Ok((cover, base, lam))
}

pub fn run(command: &Command, opts: &GlobalOpts) -> Result<Outcome> {
    match command {
        Command::Validate { groupoid: path } => {
            let g = groupoid(path)?;
            let r = g.validate();
            let summary = vec![format!("{} arrows, {} units, {} violations", g.num_arrows(), g.num_units(), r.violations.len())]
                .into_iter()
                .chain(r.violations.iter().take(5).map(|v| format!("{}: {}", v.rule, v.detail)))
                .collect();
            Ok(Outcome::new(r.is_ok(), &r, summary))
        }

        Command::Twist(TwistCmd::Build { cocycle, seq }) => {
            let ot = obstruction(cocycle, seq)?;
            let r = ot.twist.validate();
            let summary = vec![format!(
                "{} arrows over {} base arrows, {} violations",
                ot.twist.sigma.num_arrows(),
                ot.twist.base.num_arrows(),
                r.violations.len()
            )];
            Ok(Outcome::new(r.is_ok(), json!({ "twist": TwistDoc::from(&ot.twist), "validation": r }), summary))
        }

        Command::Twist(TwistCmd::Trivial { twist: path }) => {
            let t = load::<TwistDoc>(path)?.build()?;
            let r = t.validate();
            if !r.is_ok() {
                return Ok(Outcome::new(false, json!({ "validation": r }), vec![format!("not a twist: {r}")]));
            }
            let section = twist::is_trivial(&t)?;
            let line = match &section {
                Some(_) => "trivial: a homomorphic section exists".to_string(),
                None => "not trivial: the section cocycle is not a coboundary".to_string(),
            };
            Ok(Outcome::new(true, json!({ "trivial": section.is_some(), "section": section }), vec![line]))
        }

        Command::Twist(TwistCmd::BaerSum { first, second }) => {
            let t1 = load::<TwistDoc>(first)?.build()?;
            let t2 = load::<TwistDoc>(second)?.build()?;
            for (p, t) in [(first, &t1), (second, &t2)] {
                let r = t.validate();
                if !r.is_ok() {
                    bail!("{}: not a twist: {r}", p.display());
                }
            }
            let sum = twist::baer_sum(&t1, &t2)?;
            let r = sum.validate();
            let summary = vec![format!("{} arrows, {} violations", sum.sigma.num_arrows(), r.violations.len())];
            Ok(Outcome::new(r.is_ok(), json!({ "twist": TwistDoc::from(&sum), "validation": r }), summary))
        }

        Command::Cocycle(CocycleCmd::Lift { cocycle: path, seq }) => {
            let phi = cocycle(path)?;
            let check = phi.is_cocycle1();
            if !check.is_ok() {
                bail!("{}: not a cocycle: {check}", path.display());
            }
            let seq = sequence(seq)?;
            let lift = twist::lift_cocycle(&phi, &seq);
            let line = if lift.is_some() { "lift found" } else { "no lift" };
            Ok(Outcome::new(
                true,
                json!({ "liftable": lift.is_some(), "lift": lift.as_ref().map(CocycleDoc::from) }),
                vec![line.to_string()],
            ))
        }

        Command::Cocycle(CocycleCmd::Check { cocycle: path }) => {
            let phi = cocycle(path)?;
            let r = phi.is_cocycle1();
            let summary = std::iter::once(format!("{} violations", r.violations.len()))
                .chain(r.violations.iter().take(5).map(|v| format!("{}: {}", v.rule, v.detail)))
                .collect();
            Ok(Outcome::new(r.is_ok(), &r, summary))
        }

        Command::Exactness { groupoid: g, seq } => {
            let g = groupoid(g)?;
            let seq = sequence(seq)?;
            let mode = match opts.sample {
                Some(count) if !opts.exhaustive => SampleMode::Sample { count, seed: opts.seed },
                _ => SampleMode::Exhaustive,
            };
            let r = twist::delta_exactness_check(g, &seq, mode)?;
            let summary = vec![format!(
                "{} cocycles, {} liftable, {} trivial, {} disagreements",
                r.checked,
                r.liftable,
                r.trivial,
                r.disagreements.len()
            )];
            Ok(Outcome::new(r.passed(), &r, summary))
        }

        Command::Cstar(CstarCmd::VerifyInduced { cocycle, seq }) => {
            let ctx = ObstructionContext::new(obstruction(cocycle, seq)?);
            let r = verify_characterization(&ctx, opts.tolerance)?;
            let summary = r.to_string().lines().map(str::to_string).collect();
            Ok(Outcome::new(r.passed(), &r, summary))
        }

        Command::Cstar(CstarCmd::EmbedCheck { embedding, cocycle, seq }) => {
            let emb = match (embedding, cocycle, seq) {
                (Some(path), _, _) => {
                    let doc: EmbeddingDoc = load(path)?;
                    WideEmbedding::new(Arc::new(doc.sub.build()?), Arc::new(doc.ambient.build()?), doc.arrow_map)?
                }
                (None, Some(c), Some(s)) => WideEmbedding::obstruction_twist(&obstruction(c, s)?)?,
                _ => bail!("give --embedding, or --cocycle with --seq"),
            };
            let samples = opts.sample.unwrap_or(DEFAULT_EMBED_SAMPLES);
            let r = verify_embedding(&emb, opts.tolerance, samples, opts.seed)?;
            let summary = r.to_string().lines().map(str::to_string).collect();
            Ok(Outcome::new(r.passed(), &r, summary))
        }

        Command::Cech(CechCmd::Obstruct(input)) => {
            let (_, base, lam) = cech_input(input)?;
            let (lift, star) = cech::lift_and_obstruct(&lam)?;
            let class = cech::cohomology_class(&star)?;
            let normalized = star.normalization_failure().is_none();
            let cocycle = star.is_cech_cocycle();
            let mut summary = vec![format!("obstruction class {:?} in {}", class.coordinates, class.group)];
            let truncation = match opts.truncate_n {
                Some(n) => {
                    let (_, t) = cech::groupoid_2cocycle_and_twist(&star, &base, Some(n))?;
                    let trivial = twist::is_trivial(&t)?.is_some();
                    summary.push(format!("Z/{n} truncation: {} arrows, trivial {trivial}", t.sigma.num_arrows()));
                    Some(json!({ "modulus": n, "arrows": t.sigma.num_arrows(), "valid": t.validate().is_ok(), "trivial": trivial }))
                }
                None => None,
            };
            Ok(Outcome::new(
                normalized && cocycle,
                json!({
                    "lift": CochainDoc::from(&lift),
                    "obstruction": CochainDoc::from(&star),
                    "normalized": normalized,
                    "cocycle": cocycle,
                    "class": class,
                    "truncation": truncation,
                }),
                summary,
            ))
        }

        Command::Cech(CechCmd::Cohomology { cover, degree }) => {
            let cover = Arc::new(load::<CoverDoc>(cover)?.build()?);
            let h = cech::cohomology_group(&cover, *degree)?;
            let line = format!("H^{degree} = {h}");
            Ok(Outcome::new(true, json!({ "group": h, "description": h.to_string() }), vec![line]))
        }

        Command::Cech(CechCmd::XiCheck { input, window }) => {
            if *window < 0 {
                bail!("--window must be nonnegative");
            }
            let (_, base, lam) = cech_input(input)?;
            let lift = cech::canonical_lift(&lam);
            let r = cech::xi_check(&lam, &lift, &base, *window)?;
            let summary = std::iter::once(format!(
                "window {}: {} arrows, {} pairs, {} failures",
                r.window, r.arrows_checked, r.pairs_checked, r.failure_count
            ))
            .chain(r.failures.iter().cloned())
            .collect();
            Ok(Outcome::new(r.passed(), &r, summary))
        }

        Command::Cech(CechCmd::LocalUnitary(input)) => {
            let (_, base, lam) = cech_input(input)?;
            let r = cech::local_unitaries(&lam, &base, opts.tolerance)?;
            let summary = vec![format!(
                "{} sets, worst residual {:.3e}, {} transitions, {} inexact",
                r.unitaries.len(),
                r.max_residual(),
                r.transitions_checked,
                r.transition_failures.len()
            )];
            Ok(Outcome::new(r.passed(), &r, summary))
        }

        Command::Cech(CechCmd::DdReport(input)) => {
            let (_, _, lam) = cech_input(input)?;
            let r = cech::dd_report(&lam)?;
            let summary = vec![
                format!("obstruction {:?} in {}", r.obstruction.coordinates, r.obstruction_group),
                format!("descriptor {}", r.descriptor),
            ];
            Ok(Outcome::new(true, &r, summary))
        }
    }
}
