//! Records produced by the commands, in JSON-lines and table form.

use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Bumped whenever a field changes meaning or disappears.
pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// `true`, `false`, or `"skipped"` when the method did not run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharacterVerdict {
    Computed(bool),
    Skipped,
}

impl CharacterVerdict {
    pub fn computed(self) -> Option<bool> {
        match self {
            CharacterVerdict::Computed(b) => Some(b),
            CharacterVerdict::Skipped => None,
        }
    }
}

impl Serialize for CharacterVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CharacterVerdict::Computed(b) => s.serialize_bool(*b),
            CharacterVerdict::Skipped => s.serialize_str("skipped"),
        }
    }
}

impl<'de> Deserialize<'de> for CharacterVerdict {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Bool(bool),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Bool(b) => Ok(CharacterVerdict::Computed(b)),
            Raw::Text(t) if t == "skipped" => Ok(CharacterVerdict::Skipped),
            Raw::Text(t) => Err(serde::de::Error::custom(format!(
                "expected a boolean or \"skipped\", found {t:?}"
            ))),
        }
    }
}

impl std::fmt::Display for CharacterVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CharacterVerdict::Computed(b) => write!(f, "{b}"),
            CharacterVerdict::Skipped => write!(f, "skipped"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionReport {
    pub rendered: String,
    pub term_count: usize,
    pub rank: u64,
    pub multiset: Vec<u64>,
    pub multiplicity_free: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub build_ms: f64,
    pub hecke_ms: f64,
    pub character_ms: f64,
    pub prediction_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub schema_version: u32,
    pub record: String,
    pub tool_version: String,
    pub pair: String,
    pub base: String,
    pub n: usize,
    pub order_g: Option<u64>,
    pub order_k: Option<u64>,
    pub rank: Option<usize>,
    pub gelfand_hecke: Option<bool>,
    pub gelfand_character: CharacterVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character_note: Option<String>,
    pub base_abelian: Option<bool>,
    pub multiplicities: Option<Vec<u64>>,
    pub prediction: Option<PredictionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
    pub violations: Vec<String>,
    pub error: Option<String>,
    pub ok: bool,
}

impl PairReport {
    pub fn new(pair: String, base: String, n: usize) -> Self {
        PairReport {
            schema_version: SCHEMA_VERSION,
            record: "pair".into(),
            tool_version: TOOL_VERSION.into(),
            pair,
            base,
            n,
            order_g: None,
            order_k: None,
            rank: None,
            gelfand_hecke: None,
            gelfand_character: CharacterVerdict::Skipped,
            character_note: None,
            base_abelian: None,
            multiplicities: None,
            prediction: None,
            timings: None,
            violations: Vec::new(),
            error: None,
            ok: false,
        }
    }

    /// The verdict of whichever criterion ran, Hecke first.
    pub fn gelfand(&self) -> Option<bool> {
        self.gelfand_hecke.or(self.gelfand_character.computed())
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(out, "{k:<18}{v}");
        };
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        line("pair", self.pair.clone());
        line(
            "|G|, |K|",
            format!(
                "{}, {}",
                opt(self.order_g.map(|x| x.to_string())),
                opt(self.order_k.map(|x| x.to_string()))
            ),
        );
        line("rank", opt(self.rank.map(|x| x.to_string())));
        line(
            "gelfand (hecke)",
            opt(self.gelfand_hecke.map(|x| x.to_string())),
        );
        let mut character = self.gelfand_character.to_string();
        if let Some(note) = &self.character_note {
            character.push_str(&format!(" ({note})"));
        }
        line("gelfand (char)", character);
        line(
            "base abelian",
            opt(self.base_abelian.map(|x| x.to_string())),
        );
        line(
            "multiplicities",
            opt(self.multiplicities.as_deref().map(braces)),
        );
        if let Some(p) = &self.prediction {
            line("prediction", p.rendered.clone());
            line(
                "",
                format!(
                    "{} terms, multiset {}, rank {}",
                    p.term_count,
                    braces(&p.multiset),
                    p.rank
                ),
            );
        }
        if let Some(t) = &self.timings {
            line(
                "timings (ms)",
                format!(
                    "build {:.1}, hecke {:.1}, character {:.1}, prediction {:.1}",
                    t.build_ms, t.hecke_ms, t.character_ms, t.prediction_ms
                ),
            );
        }
        for v in &self.violations {
            line("VIOLATION", v.clone());
        }
        if let Some(e) = &self.error {
            line("error", e.clone());
        }
        line("status", if self.ok { "ok" } else { "FAILED" }.into());
        out
    }
}

pub fn braces(xs: &[u64]) -> String {
    format!(
        "{{{}}}",
        xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub schema_version: u32,
    pub record: String,
    pub rows: usize,
    pub errors: usize,
    pub violations: usize,
    pub gelfand_equals_abelian: bool,
    pub ok: bool,
}

pub fn scan_table(rows: &[PairReport], summary: &ScanSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<20} {:>8} {:>5} {:>7} {:>9} {:>8}  status",
        "pair", "|G|", "rank", "hecke", "character", "abelian"
    );
    let show = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    for r in rows {
        let status = match (&r.error, r.ok) {
            (Some(e), _) => format!("error: {e}"),
            (None, true) => "ok".into(),
            (None, false) => format!("VIOLATION: {}", r.violations.join("; ")),
        };
        let _ = writeln!(
            out,
            "{:<20} {:>8} {:>5} {:>7} {:>9} {:>8}  {status}",
            r.pair,
            show(r.order_g.map(|x| x.to_string())),
            show(r.rank.map(|x| x.to_string())),
            show(r.gelfand_hecke.map(|x| x.to_string())),
            r.gelfand_character.to_string(),
            show(r.base_abelian.map(|x| x.to_string())),
        );
    }
    let _ = writeln!(
        out,
        "summary: {} rows, {} errors, {} violations; gelfand == abelian {}",
        summary.rows,
        summary.errors,
        summary.violations,
        if summary.gelfand_equals_abelian {
            "held on every row"
        } else {
            "FAILED"
        }
    );
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c_ijk: u64,
    pub c_jik: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeReport {
    pub schema_version: u32,
    pub record: String,
    pub pair: String,
    pub order_g: u64,
    pub order_k: u64,
    pub rank: usize,
    pub block_sizes: Vec<usize>,
    pub representatives: Vec<usize>,
    pub commutative: bool,
    pub witness: Option<Witness>,
    /// `constants[i][j][k]`, only when requested and the rank is small.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<Vec<Vec<Vec<u64>>>>,
}

impl HeckeReport {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "pair        {}", self.pair);
        let _ = writeln!(out, "|G|, |K|    {}, {}", self.order_g, self.order_k);
        let _ = writeln!(out, "rank        {}", self.rank);
        let _ = writeln!(
            out,
            "blocks      {}",
            braces(
                &self
                    .block_sizes
                    .iter()
                    .map(|&s| s as u64)
                    .collect::<Vec<_>>()
            )
        );
        let _ = writeln!(out, "commutative {}", self.commutative);
        if let Some(w) = &self.witness {
            let _ = writeln!(
                out,
                "witness     c[{}][{}][{}] = {} but c[{}][{}][{}] = {}",
                w.i, w.j, w.k, w.c_ijk, w.j, w.i, w.k, w.c_jik
            );
        }
        if let Some(c) = &self.constants {
            let width = c
                .iter()
                .flatten()
                .flatten()
                .map(|v| v.to_string().len())
                .max()
                .unwrap_or(1)
                .max(2);
            for k in 0..self.rank {
                let _ = writeln!(out, "c[i][j][{k}]");
                for row in c {
                    let cells: Vec<String> =
                        row.iter().map(|v| format!("{:>width$}", v[k])).collect();
                    let _ = writeln!(out, "  {}", cells.join(" "));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub schema_version: u32,
    pub record: String,
    pub group: String,
    pub order: u64,
    pub abelian: bool,
    pub class_count: usize,
    pub class_sizes: Vec<usize>,
    pub irrep_dimensions: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl GroupReport {
    pub fn to_table(&self) -> String {
        let sizes: Vec<u64> = self.class_sizes.iter().map(|&s| s as u64).collect();
        let mut out = format!(
            "group       {}\norder       {}\nabelian     {}\nclasses     {} {}\n",
            self.group,
            self.order,
            self.abelian,
            self.class_count,
            braces(&sizes)
        );
        match (&self.irrep_dimensions, &self.note) {
            (Some(d), _) => out.push_str(&format!("dimensions  {}\n", braces(d))),
            (None, Some(note)) => out.push_str(&format!("dimensions  skipped ({note})\n")),
            (None, None) => {}
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchReport {
    pub schema_version: u32,
    pub record: String,
    pub base: String,
    pub n: usize,
    pub dimensions: Vec<u64>,
    pub prediction: PredictionReport,
}

impl BranchReport {
    pub fn to_table(&self) -> String {
        format!(
            "{}\n{} terms, multiplicities {}, predicted rank {}, multiplicity-free {}\n",
            self.prediction.rendered,
            self.prediction.term_count,
            braces(&self.prediction.multiset),
            self.prediction.rank,
            self.prediction.multiplicity_free
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionsReport {
    pub schema_version: u32,
    pub record: String,
    pub input: String,
    pub extensions: Vec<String>,
}

impl PartitionsReport {
    pub fn to_table(&self) -> String {
        format!("{{{}}}\n", self.extensions.join(", "))
    }
}
