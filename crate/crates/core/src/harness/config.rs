//! Run configuration in a line-based `key = value` format.
//!
//! ```text
//! # corpus lines may repeat; each expands to one or more graphs
//! corpus = extremal-paths i=2,4
//! corpus = random-delta n=12,20 delta=2 p=3/4 seeds=0..50
//! corpus = random-edges n=15 d=2 seeds=0..10
//! corpus = file path=graphs/g.txt
//! algorithms = delta1,profile012,avg,avg2,bounded,rand3
//! base = auto
//! exact_budget = 100000000
//! exact_max_n = 40
//! epsilon = 1/10
//! rand3_seed = 0
//! output = report.csv
//! ```
//!
//! Integer lists accept `a,b,c`, half-open ranges `a..b`, or a mix.

use std::path::{Path, PathBuf};

use crate::bounds::parse_rational;
use crate::constructive::{Algorithm, BoundedDegreeSolver, SolverMode};
use crate::error::{Error, Result};
use crate::exact::DEFAULT_NODE_BUDGET;
use crate::generate::{gen_extremal_paths, gen_random_bounded, gen_random_edges};
use crate::graph::BipartiteGraph;
use crate::harness::format::read_graph;
use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    ExtremalPaths {
        i: Vec<usize>,
    },
    RandomDelta {
        n: Vec<usize>,
        delta: Vec<usize>,
        p: Rational,
        seeds: Vec<u64>,
    },
    /// Edge count given directly or as `⌊d·n⌋`.
    RandomEdges {
        n: Vec<usize>,
        m: EdgeCount,
        seeds: Vec<u64>,
    },
    File {
        path: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum EdgeCount {
    Fixed(Vec<usize>),
    PerVertex(Rational),
}

/// A graph of the corpus together with its identifier.
#[derive(Debug, Clone)]
pub struct CorpusGraph {
    pub id: String,
    pub graph: BipartiteGraph,
    /// Parameter of the extremal family, if the graph is one.
    pub extremal_i: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub corpus: Vec<Family>,
    pub algorithms: Vec<Algorithm>,
    pub base: BoundedDegreeSolver,
    /// 0 disables the exact solver.
    pub exact_budget: u64,
    /// Larger graphs skip the exact solver.
    pub exact_max_n: usize,
    pub exact_threads: usize,
    pub epsilon: Rational,
    pub rand3_seed: u64,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            corpus: Vec::new(),
            algorithms: Algorithm::ALL.to_vec(),
            base: BoundedDegreeSolver::default(),
            exact_budget: DEFAULT_NODE_BUDGET,
            exact_max_n: 40,
            exact_threads: 1,
            epsilon: Rational::new(1, 10),
            rand3_seed: 0,
            output: None,
        }
    }
}

fn cfg_err(line: usize, message: impl std::fmt::Display) -> Error {
    Error::Config(format!("line {line}: {message}"))
}

/// Parses `a,b..c,d` into a list of integers.
pub fn parse_int_list<T>(s: &str) -> std::result::Result<Vec<T>, String>
where
    T: std::str::FromStr + Copy + TryFrom<u64>,
{
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u64 = lo
                .trim()
                .parse()
                .map_err(|_| format!("bad range start in {part:?}"))?;
            let hi: u64 = hi
                .trim()
                .parse()
                .map_err(|_| format!("bad range end in {part:?}"))?;
            for v in lo..hi {
                out.push(T::try_from(v).map_err(|_| format!("{v} out of range"))?);
            }
        } else {
            out.push(part.parse().map_err(|_| format!("bad integer {part:?}"))?);
        }
    }
    if out.is_empty() {
        return Err(format!("empty list {s:?}"));
    }
    Ok(out)
}

fn parse_family<'a>(line: usize, value: &'a str, base_dir: &Path) -> Result<Family> {
    let mut tokens = value.split_whitespace();
    let kind = tokens
        .next()
        .ok_or_else(|| cfg_err(line, "empty corpus entry"))?;
    let mut params = std::collections::BTreeMap::new();
    for t in tokens {
        let (k, v) = t
            .split_once('=')
            .ok_or_else(|| cfg_err(line, format!("expected key=value, got {t:?}")))?;
        if params.insert(k, v).is_some() {
            return Err(cfg_err(line, format!("repeated parameter {k:?}")));
        }
    }
    let take = |params: &mut std::collections::BTreeMap<&str, &'a str>, key: &str| {
        params
            .remove(key)
            .ok_or_else(|| cfg_err(line, format!("{kind}: missing {key}")))
    };
    let ints = |v: &str| parse_int_list::<usize>(v).map_err(|e| cfg_err(line, e));
    let seeds = |v: &str| parse_int_list::<u64>(v).map_err(|e| cfg_err(line, e));
    let family = match kind {
        "extremal-paths" => Family::ExtremalPaths {
            i: ints(take(&mut params, "i")?)?,
        },
        "random-delta" => Family::RandomDelta {
            n: ints(take(&mut params, "n")?)?,
            delta: ints(take(&mut params, "delta")?)?,
            p: match params.remove("p") {
                Some(v) => parse_rational(v).map_err(|e| cfg_err(line, e))?,
                None => Rational::from_integer(1),
            },
            seeds: seeds(take(&mut params, "seeds")?)?,
        },
        "random-edges" => {
            let n = ints(take(&mut params, "n")?)?;
            let seeds = seeds(take(&mut params, "seeds")?)?;
            let m = match (params.remove("m"), params.remove("d")) {
                (Some(m), None) => EdgeCount::Fixed(ints(m)?),
                (None, Some(d)) => {
                    EdgeCount::PerVertex(parse_rational(d).map_err(|e| cfg_err(line, e))?)
                }
                _ => return Err(cfg_err(line, "random-edges needs exactly one of m, d")),
            };
            Family::RandomEdges { n, m, seeds }
        }
        "file" => Family::File {
            path: base_dir.join(take(&mut params, "path")?),
        },
        other => return Err(cfg_err(line, format!("unknown family {other:?}"))),
    };
    if let Some(k) = params.keys().next() {
        return Err(cfg_err(line, format!("{kind}: unknown parameter {k:?}")));
    }
    Ok(family)
}

impl RunConfig {
    /// Parses a config; relative file paths resolve against `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| cfg_err(line, "expected key = value"))?;
            let int = |v: &str| {
                v.parse::<u64>()
                    .map_err(|_| cfg_err(line, format!("{key}: bad integer {v:?}")))
            };
            match key {
                "corpus" => cfg.corpus.push(parse_family(line, value, base_dir)?),
                "algorithms" => {
                    cfg.algorithms = value
                        .split(',')
                        .map(|s| s.trim().parse())
                        .collect::<Result<_>>()
                        .map_err(|e| cfg_err(line, e))?;
                }
                "base" => {
                    cfg.base.mode = match value {
                        "auto" => SolverMode::Auto,
                        "certified" => SolverMode::Certified,
                        "heuristic" => SolverMode::Heuristic,
                        other => return Err(cfg_err(line, format!("unknown base mode {other:?}"))),
                    }
                }
                "base_cap" => cfg.base.cap = int(value)? as usize,
                "exact_budget" => cfg.exact_budget = int(value)?,
                "exact_max_n" => cfg.exact_max_n = int(value)? as usize,
                "exact_threads" => cfg.exact_threads = (int(value)? as usize).max(1),
                "epsilon" => cfg.epsilon = parse_rational(value).map_err(|e| cfg_err(line, e))?,
                "rand3_seed" => cfg.rand3_seed = int(value)?,
                "output" => cfg.output = Some(base_dir.join(value)),
                other => return Err(cfg_err(line, format!("unknown key {other:?}"))),
            }
        }
        if cfg.corpus.is_empty() {
            return Err(Error::Config("no corpus entries".into()));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)?;
        RunConfig::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// Materializes every corpus graph in config order.
    pub fn corpus_graphs(&self) -> Result<Vec<CorpusGraph>> {
        let mut out = Vec::new();
        for family in &self.corpus {
            expand(family, &mut out)?;
        }
        Ok(out)
    }
}

fn expand(family: &Family, out: &mut Vec<CorpusGraph>) -> Result<()> {
    let plain = |id: String, graph| CorpusGraph {
        id,
        graph,
        extremal_i: None,
    };
    match family {
        Family::ExtremalPaths { i } => {
            for &i in i {
                out.push(CorpusGraph {
                    id: format!("extremal-paths_i{i}"),
                    graph: gen_extremal_paths(i)?,
                    extremal_i: Some(i),
                });
            }
        }
        Family::RandomDelta { n, delta, p, seeds } => {
            for &n in n {
                for &delta in delta {
                    for &seed in seeds {
                        let id = format!(
                            "random-delta_n{n}_D{delta}_p{}_s{seed}",
                            crate::bounds::format_rational(*p)
                        );
                        out.push(plain(id, gen_random_bounded(n, delta, *p, seed)?));
                    }
                }
            }
        }
        Family::RandomEdges { n, m, seeds } => {
            for &n in n {
                let counts = match m {
                    EdgeCount::Fixed(ms) => ms.clone(),
                    EdgeCount::PerVertex(d) => vec![(*d * Rational::from_integer(n as i64))
                        .floor()
                        .to_integer()
                        .max(0) as usize],
                };
                for m in counts {
                    for &seed in seeds {
                        out.push(plain(
                            format!("random-edges_n{n}_m{m}_s{seed}"),
                            gen_random_edges(n, m, seed)?,
                        ));
                    }
                }
            }
        }
        Family::File { path } => {
            let id = path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            out.push(plain(id, read_graph(path)?));
        }
    }
    Ok(())
}
