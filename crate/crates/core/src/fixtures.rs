//! Named graphs used throughout tests and the command line.
//!
//! Paths in the three-triangle configurations are drawn as single edges.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::graph::SimpleGraph;

/// Codes of the fifteen three-triangle configurations.
pub const CONFIG_CODES: [&str; 15] = [
    "ppp1", "ppp2", "ppv1", "ppv2", "ppe1", "ppe2", "pvv", "pve", "vvv1", "vvv2", "vve1", "vve2", "vee", "eee1",
    "eee2",
];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FixtureId {
    C3,
    Cycle(u32),
    K4,
    K4MinusE,
    Butterfly,
    Bowtie,
    Book,
    Hills(u32),
    SquareButterfly,
    Config(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown fixture `{0}`")]
pub struct UnknownFixture(pub String);

impl FromStr for FixtureId {
    type Err = UnknownFixture;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || UnknownFixture(s.into());
        let count = |arg: &str, min: u32| arg.parse::<u32>().ok().filter(|&k| k >= min).ok_or_else(unknown);
        Ok(match s {
            "c3" => FixtureId::C3,
            "k4" => FixtureId::K4,
            "k4-e" => FixtureId::K4MinusE,
            "butterfly" => FixtureId::Butterfly,
            "bowtie" => FixtureId::Bowtie,
            "book" => FixtureId::Book,
            "square-butterfly" => FixtureId::SquareButterfly,
            _ => {
                if let Some(k) = s.strip_prefix("cn:") {
                    FixtureId::Cycle(count(k, 3)?)
                } else if let Some(n) = s.strip_prefix("hills:") {
                    FixtureId::Hills(count(n, 1)?)
                } else if let Some(code) = s.strip_prefix("config:") {
                    FixtureId::Config(CONFIG_CODES.iter().find(|&&c| c == code).ok_or_else(unknown)?)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureId::C3 => f.write_str("c3"),
            FixtureId::Cycle(k) => write!(f, "cn:{k}"),
            FixtureId::K4 => f.write_str("k4"),
            FixtureId::K4MinusE => f.write_str("k4-e"),
            FixtureId::Butterfly => f.write_str("butterfly"),
            FixtureId::Bowtie => f.write_str("bowtie"),
            FixtureId::Book => f.write_str("book"),
            FixtureId::Hills(n) => write!(f, "hills:{n}"),
            FixtureId::SquareButterfly => f.write_str("square-butterfly"),
            FixtureId::Config(code) => write!(f, "config:{code}"),
        }
    }
}

impl FixtureId {
    /// The fixed-size fixtures followed by every configuration.
    pub fn catalog() -> Vec<FixtureId> {
        let mut all = alloc::vec![
            FixtureId::C3,
            FixtureId::K4,
            FixtureId::K4MinusE,
            FixtureId::Butterfly,
            FixtureId::Bowtie,
            FixtureId::Book,
            FixtureId::SquareButterfly,
        ];
        all.extend(CONFIG_CODES.iter().map(|&c| FixtureId::Config(c)));
        all
    }

    pub fn graph(&self) -> SimpleGraph {
        match self {
            FixtureId::C3 => cycle(3),
            FixtureId::Cycle(k) => cycle(*k),
            FixtureId::K4 => pairs(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]),
            FixtureId::K4MinusE => pairs(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]),
            FixtureId::Butterfly => hills(2),
            FixtureId::Bowtie => pairs(&[(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6)]),
            FixtureId::Book => pairs(&[(1, 2), (1, 4), (2, 3), (2, 4), (2, 5), (3, 4), (4, 5)]),
            FixtureId::Hills(n) => hills(*n),
            FixtureId::SquareButterfly => pairs(&[(1, 2), (2, 4), (3, 4), (1, 3), (3, 5), (5, 6), (4, 6)]),
            FixtureId::Config(code) => config(code).expect("codes are validated on parse"),
        }
    }
}

pub fn fixture(name: &str) -> Result<SimpleGraph, UnknownFixture> {
    Ok(name.parse::<FixtureId>()?.graph())
}

fn pairs(p: &[(u32, u32)]) -> SimpleGraph {
    SimpleGraph::from_pairs(p)
}

/// Cycle on `1..=k`.
pub fn cycle(k: u32) -> SimpleGraph {
    let edges: Vec<(u32, u32)> = (1..=k).map(|i| (i, i % k + 1)).collect();
    pairs(&edges)
}

/// `n` triangles in a chain, consecutive ones sharing a vertex: triangle `i`
/// is `{2i−1, 2i, 2i+1}`.
pub fn hills(n: u32) -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 1..=n {
        let (a, b, c) = (2 * i - 1, 2 * i, 2 * i + 1);
        edges.extend([(a, b), (a, c), (b, c)]);
    }
    pairs(&edges)
}

fn triangle(a: u32, b: u32, c: u32) -> [(u32, u32); 3] {
    [(a, b), (a, c), (b, c)]
}

/// Two triangles on the shared edge 2–3: apexes 1 and 4.
const DIAMOND: [(u32, u32); 5] = [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)];

/// The configuration with the given code, or `None` for an unknown code.
pub fn config(code: &str) -> Option<SimpleGraph> {
    let mut e: Vec<(u32, u32)> = Vec::new();
    match code {
        "ppp1" | "ppp2" => {
            e.extend(triangle(1, 2, 3));
            e.extend(triangle(4, 5, 6));
            e.extend(triangle(7, 8, 9));
            e.push((1, 4));
            e.push(if code == "ppp1" { (1, 7) } else { (2, 7) });
        }
        "ppv1" | "ppv2" => {
            e.extend(hills_edges(2));
            e.extend(triangle(6, 7, 8));
            e.push(if code == "ppv1" { (1, 6) } else { (3, 6) });
        }
        "ppe1" | "ppe2" => {
            e.extend(DIAMOND);
            e.extend(triangle(5, 6, 7));
            e.push(if code == "ppe1" { (1, 5) } else { (3, 5) });
        }
        "pvv" => e.extend(hills_edges(3)),
        "pve" => {
            e.extend(DIAMOND);
            e.extend(triangle(1, 5, 6));
        }
        "vvv1" => e.extend([(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5), (3, 4), (3, 6), (4, 6)]),
        "vvv2" => {
            e.extend(triangle(1, 2, 3));
            e.extend(triangle(1, 4, 5));
            e.extend(triangle(1, 6, 7));
        }
        "vve1" => {
            e.extend(DIAMOND);
            e.extend([(1, 4), (1, 5), (4, 5)]);
        }
        "vve2" => {
            e.extend(DIAMOND);
            e.extend(triangle(3, 5, 6));
        }
        "vee" => {
            e.extend(DIAMOND);
            e.extend(triangle(1, 3, 5));
        }
        "eee1" => return Some(FixtureId::K4.graph()),
        "eee2" => return Some(FixtureId::Book.graph()),
        _ => return None,
    }
    Some(pairs(&e))
}

fn hills_edges(n: u32) -> Vec<(u32, u32)> {
    hills(n).edges().map(|e| (e.u().index(), e.v().index())).collect()
}

/// All fixture names accepted by [`fixture`], with examples for the
/// parameterized families.
pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = FixtureId::catalog().iter().map(|f| format!("{f}")).collect();
    names.push("cn:<k>".into());
    names.push("hills:<n>".into());
    names
}
