//! The `matpw` command line.

mod document;

pub use document::{FieldHeader, InstanceBody, InstanceDocument, ResultDocument, Stats};

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::linalg::Matrix;
use crate::matroid::{LinearMatroid, RankOracle};
use crate::pathwidth::{decide_pw_le, width_of_order, PathDecomposition};
use crate::propcheck::{field_of_order, random_linear, Graph};
use crate::selfreduce::{decompose_full, gadget_oracle, Method};

#[derive(Parser, Debug)]
#[command(name = "matpw", version, about = "Exact path-width of small represented matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the path-width is at most T (exit 0 yes, 1 no).
    Decide {
        #[arg(long = "t")]
        t: usize,
        file: PathBuf,
    },
    /// Print an optimal path-decomposition.
    Decompose {
        #[arg(long, default_value = "self-linear")]
        method: Method,
        /// Recheck the ordering before printing it.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        stats: bool,
        file: PathBuf,
    },
    /// Width of a given ordering, as comma-separated 1-based indices.
    WidthOf {
        #[arg(long)]
        order: String,
        file: PathBuf,
    },
    /// Print a generated instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Check a result against an instance (exit 0 match, 1 mismatch).
    Verify { file: PathBuf, result: PathBuf },
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// `U(R,N)` over `GF(Q)` from Vandermonde columns and the point at infinity.
    Uniform { r: usize, n: usize, q: u64 },
    /// The cycle on N vertices.
    Cycle { n: usize },
    /// A uniformly random R x N matrix over GF(Q).
    Random {
        r: usize,
        n: usize,
        q: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Runs one command, writing documents to `out` and diagnostics to `err`;
/// returns the process exit code.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn load(path: &Path) -> Result<LinearMatroid<crate::field::GfTable>> {
    let text = std::fs::read_to_string(path)?;
    InstanceDocument::parse(&text)?.to_matroid()
}

fn result_of(pd: &PathDecomposition) -> ResultDocument {
    ResultDocument {
        width: pd.width,
        order: pd.order.iter().map(|i| i + 1).collect(),
        lambdas: pd.lambdas.clone(),
        stats: None,
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Decide { t, file } => {
            let m = load(&file)?;
            let yes = decide_pw_le(&m, t)?;
            writeln!(out, "{}", if yes { "YES" } else { "NO" })?;
            Ok(if yes { 0 } else { 1 })
        }
        Command::Decompose { method, verify, stats, file } => {
            let m = load(&file)?;
            let start = Instant::now();
            let d = decompose_full(&m, method, &gadget_oracle())?;
            let ms = start.elapsed().as_millis() as u64;
            if verify {
                let check = width_of_order(&m, &d.decomposition.order)?;
                if check != d.decomposition {
                    return Err(Error::Usage("decomposition failed its own check".into()));
                }
            }
            let mut doc = result_of(&d.decomposition);
            if stats {
                doc.stats = Some(Stats { oracle_calls: d.oracle_calls(), rank_queries: d.rank_queries(), ms });
            }
            out.write_all(doc.emit().as_bytes())?;
            Ok(0)
        }
        Command::WidthOf { order, file } => {
            let m = load(&file)?;
            let order = parse_order(&order, m.len())?;
            out.write_all(result_of(&width_of_order(&m, &order)?).emit().as_bytes())?;
            Ok(0)
        }
        Command::Gen { kind } => {
            let doc = match kind {
                GenKind::Uniform { r, n, q } => {
                    InstanceDocument::from_matroid(&uniform(r, n, q)?, vec![format!("U({r},{n}) over GF({q})")])?
                }
                GenKind::Cycle { n } => {
                    if n == 0 {
                        return Err(Error::Generator("a cycle needs at least one vertex".into()));
                    }
                    InstanceDocument {
                        comments: vec![format!("cycle on {n} vertices")],
                        body: InstanceBody::Graph(Graph::cycle(n)),
                    }
                }
                GenKind::Random { r, n, q, seed } => InstanceDocument::from_matroid(
                    &random_linear(r, n, q, seed)?,
                    vec![format!("random {r}x{n} over GF({q}), seed {seed}")],
                )?,
            };
            out.write_all(doc.emit().as_bytes())?;
            Ok(0)
        }
        Command::Verify { file, result } => {
            let m = load(&file)?;
            let claimed = ResultDocument::parse(&std::fs::read_to_string(&result)?)?;
            let order: Option<Vec<usize>> = claimed.order.iter().map(|&i| i.checked_sub(1)).collect();
            let actual = order.and_then(|o| width_of_order(&m, &o).ok());
            match actual {
                Some(pd) if pd.width == claimed.width && pd.lambdas == claimed.lambdas => {
                    writeln!(out, "ok")?;
                    Ok(0)
                }
                Some(pd) => {
                    writeln!(out, "mismatch: recomputed width {} lambda {:?}", pd.width, pd.lambdas)?;
                    Ok(1)
                }
                None => {
                    writeln!(out, "mismatch: order is not a permutation of 1..{}", m.len())?;
                    Ok(1)
                }
            }
        }
    }
}

fn parse_order(text: &str, n: usize) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
            _ => Err(Error::Usage(format!("bad order entry `{}`; expected 1..{n}", t.trim()))),
        })
        .collect()
}

/// `U(r, n)` over `GF(q)`: columns `(1, a, .., a^(r-1))` for the field
/// elements `a`, then `(0, .., 0, 1)`.
fn uniform(r: usize, n: usize, q: u64) -> Result<LinearMatroid<crate::field::GfTable>> {
    if r == 0 || r > n || n as u64 > q + 1 {
        return Err(Error::Generator(format!("need 1 <= R <= N <= Q+1 for U({r},{n}) over GF({q})")));
    }
    use crate::field::FieldOps;
    let field = field_of_order(q)?;
    let mut cols: Vec<Vec<u16>> = (0..q.min(n as u64))
        .map(|i| {
            let a = field.element(i);
            let mut col = vec![field.one()];
            for k in 1..r {
                col.push(field.mul(&col[k - 1], &a));
            }
            col
        })
        .collect();
    if n as u64 > q {
        let mut inf = vec![field.zero(); r];
        inf[r - 1] = field.one();
        cols.push(inf);
    }
    LinearMatroid::new(field, Matrix::from_columns(r, cols)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::MatroidExt;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_command(std::iter::once("matpw").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn uniform_generator() {
        let m = uniform(2, 5, 4).unwrap();
        assert_eq!(m.full_rank(), 2);
        assert!((0u64..32).map(crate::matroid::ElementSet::from_bits).all(|s| m.rank(s) == s.len().min(2)));
        assert!(uniform(3, 6, 4).is_err());
        assert!(uniform(3, 5, 4).is_ok());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&["decompose", "--bogus", "x"]).0, 2);
        assert_eq!(run(&["decompose", "--method", "magic", "x"]).0, 2);
        assert_eq!(run(&["decompose", "/nonexistent/file"]).0, 2);
        assert_eq!(run(&["gen", "uniform", "3", "9", "4"]).0, 2);
        assert_eq!(run(&["--help"]).0, 0);
    }

    #[test]
    fn order_entries_are_checked() {
        assert_eq!(parse_order("2, 1,3", 3).unwrap(), vec![1, 0, 2]);
        assert!(parse_order("0,1", 3).is_err());
        assert!(parse_order("1,x", 3).is_err());
    }
}
