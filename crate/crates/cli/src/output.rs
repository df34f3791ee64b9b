use std::io::Write;

use bicx_core::bicomplex::DoubleComplex;
use bicx_core::cohomology::{
    aeppli, bott_chern, conjugate_dolbeault, de_rham, frolicher, CohomologyTable, Direction, SpectralSequenceResult,
};
use bicx_core::render::render_diamond;
use serde::Serialize;

use crate::CliError;

pub const DEFAULT_TABLES: &str = "e1,e2,einf,derham,bc,aeppli";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    Page(usize),
    Infinity,
    DeRham,
    BottChern,
    Aeppli,
    Rows,
}

impl Selection {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        let s = match name.trim() {
            "einf" => Selection::Infinity,
            "derham" => Selection::DeRham,
            "bc" => Selection::BottChern,
            "aeppli" => Selection::Aeppli,
            "rows" => Selection::Rows,
            other => match other.strip_prefix('e').and_then(|r| r.parse::<usize>().ok()) {
                Some(r) if r >= 1 => Selection::Page(r),
                _ => {
                    return Err(CliError::Input(format!(
                        "unknown table '{other}' (expected e<r>, einf, derham, bc, aeppli or rows)"
                    )))
                }
            },
        };
        Ok(s)
    }

    pub fn name(self) -> String {
        match self {
            Selection::Page(r) => format!("e{r}"),
            Selection::Infinity => "einf".into(),
            Selection::DeRham => "derham".into(),
            Selection::BottChern => "bc".into(),
            Selection::Aeppli => "aeppli".into(),
            Selection::Rows => "rows".into(),
        }
    }
}

pub fn selections(tables: &[String], max_page: Option<usize>) -> Result<Vec<Selection>, CliError> {
    let mut out = Vec::new();
    let names: Vec<String> = if tables.is_empty() && max_page.is_none() {
        DEFAULT_TABLES.split(',').map(str::to_string).collect()
    } else {
        tables.to_vec()
    };
    if let Some(r) = max_page {
        if r == 0 {
            return Err(CliError::Input("--max-page must be at least 1".into()));
        }
        out.extend((1..=r).map(Selection::Page));
    }
    for n in names.iter().filter(|n| !n.trim().is_empty()) {
        let s = Selection::parse(n)?;
        if !out.contains(&s) {
            out.push(s);
        }
    }
    Ok(out)
}

#[derive(Serialize)]
#[serde(untagged)]
enum JsonEntry {
    Bidegree { p: i32, q: i32, dim: usize },
    Degree { k: i32, dim: usize },
}

#[derive(Serialize)]
struct JsonTable {
    schema: u32,
    kind: String,
    entries: Vec<JsonEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degeneration_page: Option<usize>,
}

fn json_entries(t: &CohomologyTable) -> Vec<JsonEntry> {
    if t.is_graded() {
        let Some((lo, _)) = t.degree_range() else { return vec![] };
        t.betti()
            .into_iter()
            .enumerate()
            .map(|(i, dim)| JsonEntry::Degree { k: lo + i as i32, dim })
            .collect()
    } else {
        t.window()
            .bidegrees()
            .map(|(p, q)| JsonEntry::Bidegree { p, q, dim: t.get(p, q) })
            .collect()
    }
}

/// Computes and prints the selected tables of `a`.
pub fn print_tables(a: &DoubleComplex, selected: &[Selection], json: bool, out: &mut dyn Write) -> std::io::Result<()> {
    let mut ss: Option<SpectralSequenceResult> = None;
    for &s in selected {
        let (table, degeneration) = match s {
            Selection::Page(r) => {
                let ss = ss.get_or_insert_with(|| frolicher(a, Direction::Column));
                (ss.page(r), None)
            }
            Selection::Infinity => {
                let ss = ss.get_or_insert_with(|| frolicher(a, Direction::Column));
                (ss.e_infinity.clone(), Some(ss.degeneration_page))
            }
            Selection::DeRham => (de_rham(a), None),
            Selection::BottChern => (bott_chern(a), None),
            Selection::Aeppli => (aeppli(a), None),
            Selection::Rows => (conjugate_dolbeault(a), None),
        };
        if json {
            let record = JsonTable {
                schema: 1,
                kind: s.name(),
                entries: json_entries(&table),
                degeneration_page: degeneration,
            };
            writeln!(out, "{}", serde_json::to_string(&record).expect("tables serialize"))?;
        } else if table.is_graded() {
            write!(out, "{}", render_diamond(&table))?;
        } else {
            writeln!(out, "{}:", s.name())?;
            write!(out, "{}", render_diamond(&table))?;
            if s == Selection::Infinity {
                writeln!(out, "degeneration page: {}", degeneration.unwrap_or(1))?;
            }
        }
    }
    Ok(())
}
