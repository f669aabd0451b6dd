//! Input file formats: Coxeter matrices (text and JSON), Cayley tables,
//! and structure-constant Lie algebras.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use coxdec_core::coxeter::{CoxeterError, CoxeterSystem};
use coxdec_core::grouptheory::CayleyGroup;
use coxdec_core::liealg::{LieAlgebra, LieError};

/// A parse/validation diagnostic with a 1-based source position.
#[derive(Debug)]
pub struct Diag {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl Diag {
    fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Diag {
            line,
            col,
            msg: msg.into(),
        }
    }
}

impl std::fmt::Display for Diag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

/// Tokens of one line with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut col = 1;
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some((s, c)) = start.take() {
                out.push((c, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some((i, col));
        }
        col += 1;
    }
    if let Some((s, c)) = start {
        out.push((c, &line[s..]));
    }
    out
}

/// Text format: line 1 holds n; the next n lines hold n tokens each,
/// each a positive integer or "inf".
pub fn parse_coxeter_text(src: &str) -> Result<CoxeterSystem, Diag> {
    let mut lines = src.lines().enumerate().filter(|(_, l)| !tokens(l).is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Diag::new(1, 1, "empty input; expected the rank on line 1"))?;
    let htok = tokens(header);
    if htok.len() != 1 {
        return Err(Diag::new(hline + 1, htok[1].0, "expected a single rank"));
    }
    let n: usize = htok[0]
        .1
        .parse()
        .map_err(|_| Diag::new(hline + 1, htok[0].0, "rank must be a positive integer"))?;
    if n == 0 {
        return Err(Diag::new(hline + 1, htok[0].0, "rank must be positive"));
    }
    let mut m: Vec<Option<u64>> = Vec::with_capacity(n * n);
    let mut pos: Vec<(usize, usize)> = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (lno, line) in lines {
        let toks = tokens(line);
        if rows == n {
            return Err(Diag::new(lno + 1, toks[0].0, format!("expected only {n} matrix rows")));
        }
        if toks.len() != n {
            let col = toks.get(n).map_or(1, |t| t.0);
            return Err(Diag::new(
                lno + 1,
                col,
                format!("expected {n} entries, found {}", toks.len()),
            ));
        }
        for (col, tok) in toks {
            let v = if tok == "inf" {
                None
            } else {
                let k: u64 = tok.parse().map_err(|_| {
                    Diag::new(lno + 1, col, "entry must be a positive integer or \"inf\"")
                })?;
                Some(k)
            };
            m.push(v);
            pos.push((lno + 1, col));
        }
        rows += 1;
    }
    if rows != n {
        return Err(Diag::new(rows + 2, 1, format!("expected {n} matrix rows, found {rows}")));
    }
    CoxeterSystem::new(n, m).map_err(|e| match e {
        CoxeterError::Validation { i, j, reason } => {
            let (line, col) = pos[i * n + j];
            Diag::new(line, col, reason)
        }
        other => Diag::new(1, 1, other.to_string()),
    })
}

/// JSON format: {"rank": n, "matrix": [[1, 3], [3, 1]]} with "inf"
/// strings for unbounded labels. Round-trips with the emitted form.
pub fn parse_coxeter_json(src: &str) -> Result<CoxeterSystem, Diag> {
    let v: Value =
        serde_json::from_str(src).map_err(|e| Diag::new(e.line(), e.column(), e.to_string()))?;
    let rank = v
        .get("rank")
        .and_then(Value::as_u64)
        .ok_or_else(|| Diag::new(1, 1, "missing integer field \"rank\""))? as usize;
    let matrix = v
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| Diag::new(1, 1, "missing array field \"matrix\""))?;
    if matrix.len() != rank {
        return Err(Diag::new(1, 1, format!("matrix must have {rank} rows")));
    }
    let mut m = Vec::with_capacity(rank * rank);
    for row in matrix {
        let row = row
            .as_array()
            .ok_or_else(|| Diag::new(1, 1, "matrix rows must be arrays"))?;
        if row.len() != rank {
            return Err(Diag::new(1, 1, format!("matrix rows must have {rank} entries")));
        }
        for e in row {
            match e {
                Value::Number(k) => {
                    let k = k
                        .as_u64()
                        .ok_or_else(|| Diag::new(1, 1, "entries must be positive integers"))?;
                    m.push(Some(k));
                }
                Value::String(s) if s == "inf" => m.push(None),
                _ => return Err(Diag::new(1, 1, "entries must be integers or \"inf\"")),
            }
        }
    }
    CoxeterSystem::new(rank, m).map_err(|e| Diag::new(1, 1, e.to_string()))
}

/// Cayley table: line 1 holds n; the next n lines hold rows of 0-based
/// element indices. Index 0 must be the identity; all group axioms are
/// verified, and the first violated one is reported.
pub fn parse_cayley_text(src: &str) -> Result<CayleyGroup, Diag> {
    let mut lines = src.lines().enumerate().filter(|(_, l)| !tokens(l).is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Diag::new(1, 1, "empty input; expected the order on line 1"))?;
    let htok = tokens(header);
    if htok.len() != 1 {
        return Err(Diag::new(hline + 1, htok[1].0, "expected a single order"));
    }
    let n: usize = htok[0]
        .1
        .parse()
        .map_err(|_| Diag::new(hline + 1, htok[0].0, "order must be a positive integer"))?;
    if n == 0 || n > u16::MAX as usize {
        return Err(Diag::new(hline + 1, htok[0].0, "order out of range"));
    }
    let mut table: Vec<u16> = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (lno, line) in lines {
        let toks = tokens(line);
        if rows == n {
            return Err(Diag::new(lno + 1, toks[0].0, format!("expected only {n} table rows")));
        }
        if toks.len() != n {
            let col = toks.get(n).map_or(1, |t| t.0);
            return Err(Diag::new(
                lno + 1,
                col,
                format!("expected {n} entries, found {}", toks.len()),
            ));
        }
        for (col, tok) in toks {
            let k: usize = tok
                .parse()
                .map_err(|_| Diag::new(lno + 1, col, "entry must be a 0-based index"))?;
            if k >= n {
                return Err(Diag::new(lno + 1, col, format!("index {k} out of range 0..{n}")));
            }
            table.push(k as u16);
        }
        rows += 1;
    }
    if rows != n {
        return Err(Diag::new(rows + 2, 1, format!("expected {n} table rows, found {rows}")));
    }
    CayleyGroup::from_table(n, table).map_err(|e| Diag::new(1, 1, e.to_string()))
}

/// Structure constants: {"dim": d, "brackets": [[i, j, k, "num/den"]]}.
pub fn parse_lie_json(src: &str) -> Result<LieAlgebra, Diag> {
    let v: Value =
        serde_json::from_str(src).map_err(|e| Diag::new(e.line(), e.column(), e.to_string()))?;
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Diag::new(1, 1, "missing integer field \"dim\""))? as usize;
    let brackets = v
        .get("brackets")
        .and_then(Value::as_array)
        .ok_or_else(|| Diag::new(1, 1, "missing array field \"brackets\""))?;
    let mut entries = Vec::with_capacity(brackets.len());
    for b in brackets {
        let b = b
            .as_array()
            .filter(|b| b.len() == 4)
            .ok_or_else(|| Diag::new(1, 1, "brackets must be [i, j, k, \"num/den\"]"))?;
        let idx = |t: &Value| -> Result<usize, Diag> {
            let k = t
                .as_u64()
                .ok_or_else(|| Diag::new(1, 1, "bracket indices must be integers"))?
                as usize;
            if k >= dim {
                return Err(Diag::new(1, 1, format!("bracket index {k} out of range 0..{dim}")));
            }
            Ok(k)
        };
        let q = b[3]
            .as_str()
            .and_then(parse_rational)
            .ok_or_else(|| Diag::new(1, 1, "bracket values must be \"num/den\" strings"))?;
        entries.push((idx(&b[0])?, idx(&b[1])?, idx(&b[2])?, q));
    }
    LieAlgebra::new(dim, &entries).map_err(|e: LieError| Diag::new(1, 1, e.to_string()))
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(num, den))
}
