//! Command-line driver: verbal images, the even/odd image dichotomy over
//! symmetric groups (classification and word realization), generation of
//! direct powers from independent pairs, the pair-surjectivity property for
//! quasisimple groups, exact covering-bound arithmetic, automorphism
//! summaries, and randomized audits.
//!
//! Exit codes: 0 success, 1 a verified claim failed to hold, 2 usage or
//! unsupported input, 3 a resource cap or budget refused the computation.

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use wordmap_core::aut::{automorphism_group, pair_table, PairMode};
use wordmap_core::bounds::{alt_cover_report, lie_report, sl2p_report, sl_report, BoundReport};
use wordmap_core::construct::{
    audit_images, build_case_two_target, build_target, classify_subset, compose_power_prefix,
    conjugate_power_audit, find_word, lemma22_check, sample_independent_pairs, CaseTag,
    SearchOutcome, SearchStrategy, TargetAssignment, DEFAULT_NULL_CAP,
};
use wordmap_core::group::load::{group_from_document, load_group};
use wordmap_core::group::subgroup::stable_derived_term;
use wordmap_core::group::GroupKind;
use wordmap_core::image::{parity_check, verbal_image, Strategy};
use wordmap_core::subset::{parse_subset, SubsetSpec};
use wordmap_core::{Caps, Error, Exec, FiniteGroup, Word};

/// Word-map images over small finite groups: computation, classification,
/// construction, generation checks, and exact bound arithmetic.
#[derive(Parser)]
#[command(name = "wordmap", version)]
struct Cli {
    /// Emit a machine-readable JSON envelope on stdout (and JSON errors on
    /// stderr).
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for data-parallel sweeps; the default of 1 keeps every
    /// computation sequential and bit-reproducible.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Override the maximum group order that will be enumerated.
    #[arg(long, global = true)]
    max_order: Option<u64>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the full image of a word map over a group.
    Image {
        /// Builtin spec (sym:n, alt:n, sl:n:q) or path to a group document.
        #[arg(long)]
        group: String,
        /// The word, e.g. "x^15" or "x^-1 y^-1 x y".
        #[arg(long)]
        word: String,
        /// Number of word variables available (x, y, x3, ...).
        #[arg(long, default_value_t = 2)]
        rank: u8,
        /// Evaluation strategy: naive | class-reduced.
        #[arg(long, default_value = "class-reduced")]
        strategy: String,
    },
    /// Classify a subset of a symmetric group against the image dichotomy.
    Classify {
        /// Symmetric-group degree (at least 5).
        #[arg(long)]
        n: usize,
        /// Subset document path or inline description (identity, two-power,
        /// all, class-of: ..., union: [...; ...]).
        #[arg(long)]
        set: String,
    },
    /// Construct a word whose image is the given subset, then verify it.
    Realize {
        /// Symmetric-group degree (at least 5).
        #[arg(long)]
        n: usize,
        /// Subset document path or inline description.
        #[arg(long)]
        set: String,
        /// Maximum length of the searched word core.
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        /// Search strategy: bfs | bidirectional | random-walk.
        #[arg(long, default_value = "bfs")]
        strategy: String,
        /// Random seed (random-walk only).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// How many non-generating pairs to pin to the identity.
        #[arg(long, default_value_t = DEFAULT_NULL_CAP)]
        null_cap: usize,
    },
    /// Check the pair-surjectivity property for a quasisimple group.
    Star {
        /// Builtin spec (sym:n, alt:n, sl:n:q) or path to a group document.
        #[arg(long)]
        group: String,
    },
    /// Verify that independent generating pairs generate the direct power.
    #[command(name = "lemma22")]
    Lemma22 {
        /// Builtin spec (sym:n, alt:n, sl:n:q) or path to a group document.
        #[arg(long)]
        group: String,
        /// Number of independent pairs (= direct factors).
        #[arg(long)]
        copies: usize,
        /// Random seed for pair sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// How many tuples must generate the whole group (default: all).
        #[arg(long)]
        full_generators: Option<usize>,
    },
    /// Evaluate an exact covering-bound chain.
    Bounds {
        #[command(subcommand)]
        family: BoundsCmd,
    },
    /// Summarize the automorphism group (brute force).
    Auts {
        /// Builtin spec (sym:n, alt:n, sl:n:q) or path to a group document.
        #[arg(long)]
        group: String,
    },
    /// Random-word image audit over a symmetric group: every image must
    /// classify into one of the two cases.
    Audit {
        /// Symmetric-group degree (at least 5).
        #[arg(long)]
        n: usize,
        /// Number of random words to test.
        #[arg(long)]
        count: usize,
        /// Maximum length of each sampled word.
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        /// Random seed for word sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify the conjugate-power fact used by the odd-case construction.
    #[command(name = "audit-power")]
    AuditPower {
        /// Symmetric-group degree.
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Covering bound for central extensions of alternating groups.
    Alt {
        /// Alternating-group degree (at least 5).
        n: usize,
        /// Exactly computed class count of the cover itself, if available.
        #[arg(long)]
        exact_cover: Option<u64>,
        /// Exactly computed class count of the simple group, if available.
        #[arg(long)]
        exact_simple: Option<u64>,
    },
    /// Special linear group bound chain for SL(n, q).
    Sl {
        /// Matrix dimension (at least 2).
        n: u32,
        /// Field size (a prime power).
        q: u64,
    },
    /// Fully explicit chain for SL(2, p), p prime.
    #[command(name = "sl2p")]
    Sl2p {
        /// Field characteristic (a prime).
        p: u64,
    },
    /// Rank/field instance with a caller-supplied asymptotic constant.
    Lie {
        /// Lie rank of the instance.
        rank: u32,
        /// Field size (a prime power).
        q: u64,
        /// Asymptotic constant to assume.
        #[arg(long, default_value_t = 36)]
        c: u64,
    },
}

/// One finished command: structured and human forms of the same result, plus
/// whether the verified claim failed (exit 1).
struct Outcome {
    command: &'static str,
    inputs: Value,
    result: Value,
    text: String,
    failed: bool,
}

fn exit_of(e: &Error) -> (u8, &'static str) {
    match e {
        Error::Hypothesis(_) => (1, "hypothesis"),
        Error::Mismatch(_) => (1, "mismatch"),
        Error::Parse(_) => (2, "parse"),
        Error::Precondition(_) => (2, "precondition"),
        Error::Unsupported(_) => (2, "unsupported"),
        Error::Io(_) => (2, "io"),
        Error::Capacity { .. } => (3, "capacity"),
        Error::Budget { .. } => (3, "budget"),
    }
}

/// Write to stdout without panicking when the reader has gone away (e.g. the
/// output is piped into `head`).
fn print_out(s: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut caps = Caps::default();
    if let Some(m) = cli.max_order {
        caps.max_order = m;
    }
    let exec = Exec::threads(cli.threads);
    match run(&cli, &caps, exec) {
        Ok(out) => {
            if cli.json {
                let mut doc = serde_json::to_string_pretty(&envelope(&cli, &caps, &out))
                    .expect("serializable envelope");
                doc.push('\n');
                print_out(&doc);
            } else {
                print_out(&out.text);
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let (code, kind) = exit_of(&e);
            if cli.json {
                eprintln!(
                    "{}",
                    json!({ "schema": 1, "error": { "kind": kind, "message": e.to_string() } })
                );
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}

fn envelope(cli: &Cli, caps: &Caps, out: &Outcome) -> Value {
    json!({
        "schema": 1,
        "command": out.command,
        "inputs": out.inputs,
        "threads": cli.threads,
        "caps": {
            "max_order": caps.max_order,
            "aut_max_order": caps.aut_max_order,
            "pair_max_order": caps.pair_max_order,
            "eval_budget": caps.eval_budget.to_string(),
            "search_state_cap": caps.search_state_cap,
            "cayley_full_assoc": caps.cayley_full_assoc,
        },
        "conventions": {
            "composition": "products apply the left factor first: (g h) means g then h",
            "commutator": "[u, v] = u^-1 v^-1 u v",
            "word_variables": "x and y bind to tuple entries in order",
        },
        "passed": !out.failed,
        "result": out.result,
    })
}

fn run(cli: &Cli, caps: &Caps, exec: Exec) -> Result<Outcome, Error> {
    match &cli.cmd {
        Cmd::Image {
            group,
            word,
            rank,
            strategy,
        } => cmd_image(group, word, *rank, strategy, caps, exec),
        Cmd::Classify { n, set } => cmd_classify(*n, set, caps),
        Cmd::Realize {
            n,
            set,
            max_len,
            strategy,
            seed,
            null_cap,
        } => cmd_realize(*n, set, *max_len, strategy, *seed, *null_cap, caps, exec),
        Cmd::Star { group } => cmd_star(group, caps, exec),
        Cmd::Lemma22 {
            group,
            copies,
            seed,
            full_generators,
        } => cmd_lemma22(group, *copies, *seed, *full_generators, caps),
        Cmd::Bounds { family } => cmd_bounds(family),
        Cmd::Auts { group } => cmd_auts(group, caps),
        Cmd::Audit {
            n,
            count,
            max_len,
            seed,
        } => cmd_audit(*n, *count, *max_len, *seed, caps, exec),
        Cmd::AuditPower { n } => cmd_audit_power(*n, caps),
    }
}

fn resolve_group(spec: &str, caps: &Caps) -> Result<FiniteGroup, Error> {
    if spec.starts_with("sym:") || spec.starts_with("alt:") || spec.starts_with("sl:") {
        return load_group(spec, caps);
    }
    let p = Path::new(spec);
    if p.is_file() {
        let text = std::fs::read_to_string(p)?;
        let name = p.file_stem().and_then(|s| s.to_str()).unwrap_or("group");
        return group_from_document(&text, name, caps);
    }
    Err(Error::parse(format!(
        "group spec {spec:?} is neither a builtin (sym:n, alt:n, sl:n:q) nor a readable file"
    )))
}

fn resolve_subset(g: &FiniteGroup, spec: &str) -> Result<SubsetSpec, Error> {
    let p = Path::new(spec);
    if p.is_file() {
        let text = std::fs::read_to_string(p)?;
        parse_subset(g, &text)
    } else {
        parse_subset(g, spec)
    }
}

fn parse_eval_strategy(text: &str) -> Result<Strategy, Error> {
    match text {
        "naive" => Ok(Strategy::Naive),
        "class-reduced" => Ok(Strategy::ClassReduced),
        other => Err(Error::parse(format!(
            "unknown evaluation strategy {other:?}; expected naive or class-reduced"
        ))),
    }
}

fn is_full_symmetric(g: &FiniteGroup) -> bool {
    if !matches!(g.kind(), GroupKind::Perm) || g.degree() < 2 {
        return false;
    }
    let mut fact = 1u128;
    for k in 2..=g.degree() as u128 {
        fact *= k;
    }
    g.order() as u128 == fact
}

fn group_header(g: &FiniteGroup) -> String {
    format!("group: {} (order {})\n", g.name(), g.order())
}

fn cmd_image(
    group: &str,
    word_text: &str,
    rank: u8,
    strategy_text: &str,
    caps: &Caps,
    exec: Exec,
) -> Result<Outcome, Error> {
    let g = resolve_group(group, caps)?;
    let strategy = parse_eval_strategy(strategy_text)?;
    let w = Word::parse(word_text, rank)?;
    let image = verbal_image(&g, &w, strategy, caps, exec)?;
    let parity = if is_full_symmetric(&g) {
        Some(parity_check(&g, &w, &image)?)
    } else {
        None
    };
    let shown: Option<Vec<String>> = if image.len() <= 200 {
        Some(image.elements().map(|e| g.display_elem(e)).collect())
    } else {
        None
    };
    let mut text = group_header(&g);
    text += &format!("word: {}\n", display_word(&w));
    text += &format!("strategy: {}\n", strategy.label());
    text += &format!("image size: {}\n", image.len());
    if let Some(elems) = &shown {
        text += &format!("image: {}\n", elems.join(", "));
    }
    if let Some(p) = &parity {
        text += &format!(
            "parity: exponent sums all even: {}; image inside even part: {}; \
             image contains all 2-power-order elements: {}\n",
            p.all_exponent_sums_even, p.image_all_even, p.contains_two_power_set
        );
    }
    Ok(Outcome {
        command: "image",
        inputs: json!({
            "group": group, "word": word_text, "rank": rank,
            "strategy": strategy.label(),
        }),
        result: json!({
            "group": g.name(),
            "order": g.order(),
            "word": display_word(&w),
            "size": image.len(),
            "elements": shown,
            "parity": parity.as_ref().map(|p| json!({
                "all_exponent_sums_even": p.all_exponent_sums_even,
                "image_all_even": p.image_all_even,
                "contains_two_power_set": p.contains_two_power_set,
            })),
        }),
        text,
        failed: false,
    })
}

fn display_word(w: &Word) -> String {
    if w.is_empty() {
        "(empty word)".to_string()
    } else {
        w.to_string()
    }
}

fn cmd_classify(n: usize, set: &str, caps: &Caps) -> Result<Outcome, Error> {
    let g = load_group(&format!("sym:{n}"), caps)?;
    let act = automorphism_group(&g, caps)?;
    let a = resolve_subset(&g, set)?;
    let cls = classify_subset(&g, &act, &a)?;
    let mut text = group_header(&g);
    text += &format!("set size: {}\n", a.len());
    text += &format!("tag: {}\n", cls.tag.label());
    if let Some(b) = &cls.invariant_part {
        text += &format!("even invariant remainder size: {}\n", b.len());
    }
    if let Some(why) = &cls.failed_condition {
        text += &format!("failed condition: {why}\n");
    }
    Ok(Outcome {
        command: "classify",
        inputs: json!({ "n": n, "set": set }),
        result: json!({
            "set_size": a.len(),
            "tag": cls.tag.label(),
            "invariant_remainder_size": cls.invariant_part.as_ref().map(|b| b.len()),
            "two_power_contained": cls.two_power_contained,
            "failed_condition": cls.failed_condition,
        }),
        text,
        failed: false,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_realize(
    n: usize,
    set: &str,
    max_len: usize,
    strategy_text: &str,
    seed: u64,
    null_cap: usize,
    caps: &Caps,
    exec: Exec,
) -> Result<Outcome, Error> {
    let strategy = SearchStrategy::parse(strategy_text)?;
    let g = load_group(&format!("sym:{n}"), caps)?;
    let act = automorphism_group(&g, caps)?;
    let a = resolve_subset(&g, set)?;
    let cls = classify_subset(&g, &act, &a)?;
    let inputs = json!({
        "n": n, "set": set, "max_len": max_len,
        "strategy": strategy.label(), "seed": seed, "null_cap": null_cap,
    });
    if matches!(cls.tag, CaseTag::NotRealizable) {
        let why = cls
            .failed_condition
            .unwrap_or_else(|| "set is not realizable".to_string());
        return Ok(Outcome {
            command: "realize",
            inputs,
            result: json!({ "tag": "not-realizable", "reason": why }),
            text: format!(
                "{}tag: not-realizable\nreason: {why}\n",
                group_header(&g)
            ),
            failed: true,
        });
    }
    let socle = stable_derived_term(&g)?;
    let table = pair_table(&g, &PairMode::AlmostSimple(&socle), &act, caps, exec)?;
    let (target, odd_case): (TargetAssignment, bool) = match cls.tag {
        CaseTag::CaseI => (build_target(&g, &act, &table, &a, null_cap)?, false),
        CaseTag::CaseII => (build_case_two_target(&g, &act, &table, &a)?, true),
        CaseTag::NotRealizable => unreachable!("handled above"),
    };
    let outcome = find_word(&g, &target, max_len, strategy, seed, caps)?;
    let tag = cls.tag.label();
    let target_json = json!({
        "values": target.value_count(),
        "nulls": target.null_count(),
        "assignment": target.to_json(&g),
    });
    match outcome {
        SearchOutcome::NotFound { explored } => Ok(Outcome {
            command: "realize",
            inputs,
            result: json!({
                "tag": tag,
                "target": target_json,
                "found": false,
                "explored": explored,
            }),
            text: format!(
                "{}tag: {tag}\nno witness within budget (explored {explored} states, \
                 max length {max_len}); the constructive direction is unverified here\n",
                group_header(&g)
            ),
            failed: true,
        }),
        SearchOutcome::Found { word: core, explored } => {
            let w = if odd_case {
                compose_power_prefix(g.degree(), &core)?
            } else {
                core.clone()
            };
            let image = verbal_image(&g, &w, Strategy::ClassReduced, caps, exec)?;
            let verified = image == a;
            let mut text = group_header(&g);
            text += &format!("tag: {tag}\n");
            text += &format!(
                "word: {} (length {}, explored {} states)\n",
                display_word(&w),
                w.len(),
                explored
            );
            text += &format!("image size: {} (target size {})\n", image.len(), a.len());
            text += &format!("verified: {verified}\n");
            Ok(Outcome {
                command: "realize",
                inputs,
                result: json!({
                    "tag": tag,
                    "target": target_json,
                    "found": true,
                    "explored": explored,
                    "word": display_word(&w),
                    "word_length": w.len(),
                    "core_word": display_word(&core),
                    "image_size": image.len(),
                    "verified": verified,
                }),
                text,
                failed: !verified,
            })
        }
    }
}

fn cmd_star(group: &str, caps: &Caps, exec: Exec) -> Result<Outcome, Error> {
    let g = resolve_group(group, caps)?;
    let r = wordmap_core::construct::star_check(&g, caps, exec)?;
    let text = format!(
        "{}generating pairs: {}\npair orbits (r): {}\nworst-case constraints (k): {}\n\
         acting order: {}\nfree action: {}\ncenter order: {}\nproperty holds: {}\n",
        group_header(&g),
        r.l,
        r.r,
        r.k_worst,
        r.acting_order,
        r.free_action,
        r.center_order,
        r.star_holds
    );
    Ok(Outcome {
        command: "star",
        inputs: json!({ "group": group }),
        result: json!({
            "group": r.group,
            "l": r.l,
            "r": r.r,
            "k_worst": r.k_worst,
            "acting_order": r.acting_order,
            "free_action": r.free_action,
            "center_order": r.center_order,
            "star_holds": r.star_holds,
        }),
        failed: !r.star_holds,
        text,
    })
}

fn cmd_lemma22(
    group: &str,
    copies: usize,
    seed: u64,
    full_generators: Option<usize>,
    caps: &Caps,
) -> Result<Outcome, Error> {
    let g = resolve_group(group, caps)?;
    let act = automorphism_group(&g, caps)?;
    let socle = stable_derived_term(&g)?;
    let tuples = sample_independent_pairs(&g, &act, copies, seed)?;
    let full = full_generators.unwrap_or(copies);
    let report = lemma22_check(&g, &socle, &tuples, full, &act)?;
    let passes = report.passes();
    let tuple_display: Vec<[String; 2]> = tuples
        .iter()
        .map(|(a, b)| [g.display_elem(*a), g.display_elem(*b)])
        .collect();
    let mut text = group_header(&g);
    text += &format!("copies: {}\n", report.copies);
    text += &format!("socle order: {}\n", report.socle_order);
    for (i, (a, b)) in tuple_display.iter().map(|t| (&t[0], &t[1])).enumerate() {
        text += &format!("tuple {}: ({a}, {b})\n", i + 1);
    }
    text += &format!("embedding points: {}\n", report.points);
    text += &format!("generated order: {}\n", report.subgroup_order);
    text += &format!(
        "every factor contained: {}\n",
        report.factor_contained.iter().all(|&c| c)
    );
    text += &format!("passes: {passes}\n");
    Ok(Outcome {
        command: "lemma22",
        inputs: json!({
            "group": group, "copies": copies, "seed": seed,
            "full_generators": full,
        }),
        result: json!({
            "copies": report.copies,
            "full_generators": report.full_generators,
            "points": report.points,
            "subgroup_order": report.subgroup_order.to_string(),
            "socle_order": report.socle_order,
            "factor_contained": report.factor_contained,
            "tuples": tuple_display,
            "passes": passes,
        }),
        text,
        failed: !passes,
    })
}

fn cmd_bounds(family: &BoundsCmd) -> Result<Outcome, Error> {
    let (inputs, report): (Value, BoundReport) = match family {
        BoundsCmd::Alt {
            n,
            exact_cover,
            exact_simple,
        } => (
            json!({ "family": "alt", "n": n, "exact_cover": exact_cover,
                    "exact_simple": exact_simple }),
            alt_cover_report(*n, *exact_cover, *exact_simple)?,
        ),
        BoundsCmd::Sl { n, q } => (
            json!({ "family": "sl", "n": n, "q": q }),
            sl_report(*n, *q)?,
        ),
        BoundsCmd::Sl2p { p } => (json!({ "family": "sl2p", "p": p }), sl2p_report(*p)?),
        BoundsCmd::Lie { rank, q, c } => (
            json!({ "family": "lie", "rank": rank, "q": q, "c": c }),
            lie_report(*rank, *q, *c)?,
        ),
    };
    let mut text = format!("family: {}\n", report.family);
    for (k, v) in &report.params {
        text += &format!("  {k} = {v}\n");
    }
    text += &format!(
        "covering lower bound: {} (~{:.4})\n",
        report.d_lower, report.d_lower_f64
    );
    text += &format!(
        "class-count upper bound: {} (~{:.4})\n",
        report.k_upper, report.k_upper_f64
    );
    for (label, v) in &report.k_candidates {
        text += &format!("  candidate {label}: {v}\n");
    }
    if let Some((lo, hi)) = &report.p_interval {
        text += &format!("generation probability in ({lo}, {hi}]\n");
    }
    text += &format!(
        "verdict: {}\n",
        if report.verdict { "holds" } else { "does not hold" }
    );
    for c in &report.caveats {
        text += &format!("caveat: {c}\n");
    }
    Ok(Outcome {
        command: "bounds",
        inputs,
        result: json!({
            "family": report.family,
            "params": report.params.iter()
                .map(|(k, v)| json!({ "name": k, "value": v }))
                .collect::<Vec<_>>(),
            "d_lower": report.d_lower.to_string(),
            "d_lower_f64": report.d_lower_f64,
            "k_upper": report.k_upper.to_string(),
            "k_upper_f64": report.k_upper_f64,
            "k_candidates": report.k_candidates.iter()
                .map(|(l, v)| json!({ "label": l, "value": v.to_string() }))
                .collect::<Vec<_>>(),
            "p_interval": report.p_interval.as_ref().map(|(lo, hi)| json!({
                "lower_exclusive": lo.to_string(),
                "upper_inclusive": hi.to_string(),
            })),
            "verdict": report.verdict,
            "caveats": report.caveats,
        }),
        text,
        failed: !report.verdict,
    })
}

fn cmd_auts(group: &str, caps: &Caps) -> Result<Outcome, Error> {
    let g = resolve_group(group, caps)?;
    let act = automorphism_group(&g, caps)?;
    let orbits = act.orbit_partition().orbits.len();
    let outer_index = act.count() / act.inner_count();
    let text = format!(
        "{}automorphisms: {}\ninner automorphisms: {}\nouter index: {}\nelement orbits: {}\n",
        group_header(&g),
        act.count(),
        act.inner_count(),
        outer_index,
        orbits
    );
    Ok(Outcome {
        command: "auts",
        inputs: json!({ "group": group }),
        result: json!({
            "group": g.name(),
            "order": act.count(),
            "inner_order": act.inner_count(),
            "outer_index": outer_index,
            "element_orbits": orbits,
        }),
        text,
        failed: false,
    })
}

fn cmd_audit(
    n: usize,
    count: usize,
    max_len: usize,
    seed: u64,
    caps: &Caps,
    exec: Exec,
) -> Result<Outcome, Error> {
    let g = load_group(&format!("sym:{n}"), caps)?;
    let act = automorphism_group(&g, caps)?;
    let report = audit_images(&g, &act, count, max_len, seed, caps, exec)?;
    let clean = report.violations.is_empty();
    let mut text = group_header(&g);
    text += &format!(
        "words tested: {} (lengths 1..={}, seed {})\n",
        report.count, report.max_len, report.seed
    );
    text += &format!("even-case images: {}\n", report.case_i);
    text += &format!("odd-case images: {}\n", report.case_ii);
    text += &format!("violations: {}\n", report.violations.len());
    for (w, why) in &report.violations {
        text += &format!("  word {w}: {why}\n");
    }
    Ok(Outcome {
        command: "audit",
        inputs: json!({ "n": n, "count": count, "max_len": max_len, "seed": seed }),
        result: json!({
            "group": report.group,
            "count": report.count,
            "max_len": report.max_len,
            "seed": report.seed,
            "case_i": report.case_i,
            "case_ii": report.case_ii,
            "violations": report.violations.iter()
                .map(|(w, why)| json!({ "word": w, "reason": why }))
                .collect::<Vec<_>>(),
            "words": report.words.iter()
                .map(|w| json!({
                    "word": w.word,
                    "image_size": w.image_size,
                    "tag": w.tag.label(),
                }))
                .collect::<Vec<_>>(),
        }),
        text,
        failed: !clean,
    })
}

fn cmd_audit_power(n: usize, caps: &Caps) -> Result<Outcome, Error> {
    let g = load_group(&format!("sym:{n}"), caps)?;
    let report = conjugate_power_audit(&g)?;
    let clean = report.counterexamples.is_empty();
    let mut text = group_header(&g);
    text += &format!(
        "exponent: {} (2-part {})\n",
        report.exponent, report.exponent_two_part
    );
    text += &format!("elements checked: {}\n", report.checked);
    text += &format!("counterexamples: {}\n", report.counterexamples.len());
    for c in &report.counterexamples {
        text += &format!("  {c}\n");
    }
    Ok(Outcome {
        command: "audit-power",
        inputs: json!({ "n": n }),
        result: json!({
            "degree": report.degree,
            "exponent": report.exponent,
            "exponent_two_part": report.exponent_two_part,
            "checked": report.checked,
            "counterexamples": report.counterexamples,
        }),
        text,
        failed: !clean,
    })
}
