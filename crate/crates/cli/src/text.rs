//! Human-readable tables. JSON is the stable output; this is for skimming.

use std::fmt::Write;

use eigenrecon::format::fmt_real;
use eigenrecon::recon::{PairReport, ProbeOutcome, TheoremMainSample};
use eigenrecon::secular::{DetReport, Origin, UpdateResult};
use eigenrecon::{EigenBasis, SpectralDeck, SquareTable};

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn row(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v:>24}", v = fmt_real(*v))).collect()
}

pub fn eig(b: &EigenBasis) -> String {
    let mut s = String::new();
    let spectrum = b.spectrum();
    writeln!(s, "n = {}, cluster_tol = {}", b.n(), fmt_real(spectrum.cluster_tol())).unwrap();
    writeln!(s, "{:>4} {:>24} {:>8}", "k", "eigenvalue", "cluster").unwrap();
    for (k, v) in spectrum.values().iter().enumerate() {
        writeln!(s, "{k:>4} {:>24} {:>8}", fmt_real(*v), spectrum.cluster_of(k)).unwrap();
    }
    writeln!(s, "eigenvectors (one per line):").unwrap();
    for k in 0..b.n() {
        writeln!(s, "{k:>4}{}", row(b.vector(k))).unwrap();
    }
    s
}

pub fn deck(parent: &EigenBasis, d: &SpectralDeck, violation: f64) -> String {
    let mut s = String::new();
    writeln!(s, "spectrum{}", row(parent.spectrum().values())).unwrap();
    for (m, card) in d.cards().iter().enumerate() {
        writeln!(s, "card {m:>3}{}", row(card.values())).unwrap();
    }
    writeln!(
        s,
        "interlacing violation {} ({})",
        fmt_real(violation),
        verdict(d.interlaces(parent.spectrum()))
    )
    .unwrap();
    s
}

pub fn squares(parent: &EigenBasis, t: &SquareTable) -> String {
    let mut s = String::new();
    writeln!(s, "rows are coordinates m, columns eigenvalue indices i").unwrap();
    writeln!(s, "{:>4}{}", "", row(parent.spectrum().values())).unwrap();
    for (m, cells) in t.rows().iter().enumerate() {
        let line: String = cells
            .iter()
            .map(|c| match c {
                Some(v) => format!("{:>24}", fmt_real(*v)),
                None => format!("{:>24}", "-"),
            })
            .collect();
        writeln!(s, "{m:>4}{line}").unwrap();
    }
    for w in t.warnings() {
        writeln!(s, "warning: {w:?}").unwrap();
    }
    s
}

pub fn rank1(res: &UpdateResult, t: f64) -> String {
    let mut s = String::new();
    writeln!(s, "t = {}", fmt_real(t)).unwrap();
    writeln!(s, "{:>4} {:>24}  origin", "k", "eigenvalue").unwrap();
    for (k, e) in res.entries().iter().enumerate() {
        let origin = match e.origin {
            Origin::Retained(i) => format!("retained {i}"),
            Origin::Root(j) => format!("root {j}"),
        };
        let flag = if e.near_degenerate { " (near-degenerate)" } else { "" };
        writeln!(s, "{k:>4} {:>24}  {origin}{flag}", fmt_real(e.value)).unwrap();
    }
    let margin = res.interlacing_margin(t);
    if margin.is_finite() {
        writeln!(s, "interlacing margin {}", fmt_real(margin)).unwrap();
    }
    s
}

pub fn gm(r: &PairReport) -> String {
    let mut s = String::new();
    writeln!(s, "n = {}, tol = {}", r.n, fmt_real(r.tol)).unwrap();
    writeln!(
        s,
        "spectra      {}  max deviation {}",
        verdict(r.spectra_equal.pass),
        fmt_real(r.spectra_equal.max_deviation)
    )
    .unwrap();
    writeln!(
        s,
        "deck         {}  {} mode, max deviation {}",
        verdict(r.deck.pass),
        r.deck.mode,
        fmt_real(r.deck.max_deviation)
    )
    .unwrap();
    writeln!(s, "squares      {}", verdict(r.squares.pass)).unwrap();
    writeln!(s, "projections  {}", verdict(r.projections.pass)).unwrap();
    writeln!(
        s,
        "signs        {}  {} compared, {} orthogonal to ones",
        verdict(r.signs.pass),
        r.signs.entries.len(),
        r.signs.orthogonal_to_ones.len()
    )
    .unwrap();
    writeln!(
        s,
        "lowest pair  {}  {} samples, {} outside interval",
        verdict(r.theorem_main.pass),
        r.theorem_main.samples.len(),
        r.theorem_main.outside_interval
    )
    .unwrap();
    writeln!(s, "overall      {}", verdict(r.pass)).unwrap();
    s
}

pub fn tmain(samples: &[TheoremMainSample], tol: f64) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{:>24} {:>24} {:>24} {:>24}  status",
        "t", "lowest A", "lowest B", "angle"
    )
    .unwrap();
    for x in samples {
        let angle = x.angle.map_or_else(|| "-".to_string(), fmt_real);
        let status = if x.outside_interval() {
            "outside"
        } else {
            verdict(x.agrees(tol))
        };
        writeln!(
            s,
            "{:>24} {:>24} {:>24} {:>24}  {status}, cross-check {}",
            fmt_real(x.t),
            fmt_real(x.lowest_a),
            fmt_real(x.lowest_b),
            angle,
            verdict(x.cross_check.pass)
        )
        .unwrap();
    }
    s
}

pub fn probe(o: &ProbeOutcome) -> String {
    match o {
        ProbeOutcome::Found {
            permutation,
            sign,
            distance,
        } => format!(
            "found permutation {permutation:?}, sign {}, distance {}\n",
            fmt_real(*sign),
            fmt_real(*distance)
        ),
        ProbeOutcome::Exhausted { min_distance } => {
            format!("exhausted, best distance {}\n", fmt_real(*min_distance))
        }
    }
}

pub fn det(r: &DetReport, tol: f64) -> String {
    let mut s = String::new();
    writeln!(s, "{:>24} {:>24} {:>24} {:>24}", "lambda", "updated", "factored", "rel. dev.").unwrap();
    for p in &r.probes {
        writeln!(
            s,
            "{:>24} {:>24} {:>24} {:>24}",
            fmt_real(p.lambda),
            fmt_real(p.updated),
            fmt_real(p.factored),
            fmt_real(p.relative_deviation)
        )
        .unwrap();
    }
    writeln!(
        s,
        "max relative deviation {} ({})",
        fmt_real(r.max_relative_deviation),
        verdict(r.max_relative_deviation <= tol)
    )
    .unwrap();
    s
}
