//! Text formats for matrices and diagonal specifications.
//!
//! Matrix files:
//!
//! ```text
//! # comment
//! mode: compact
//! dim 2
//! 1.0 0.5-2.0i
//! 0.5+2.0i -1.0
//! ```
//!
//! `dim r c` declares a rectangular matrix. Entries are `a`, `bi`, `a+bi` or
//! `a-bi` in plain decimal notation.
//!
//! Diagonal files start with `diag` and carry `head:`, `liminf:`, `limsup:`
//! and an optional `generator:` line such as
//! `interleave(harmonic(1.0, 1.0), harmonic(-1.0, 1.0))`.

use std::fmt::Write as _;
use std::path::Path;

use sspread::spectra::Mode;
use sspread::{CMatrix, DiagSpec, Generator, HermMatrix, C64};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("{path}: {reason}")]
    Read { path: String, reason: String },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing {0}")]
    Missing(&'static str),
    #[error("{0}")]
    Invalid(String),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub mode: Option<Mode>,
    pub matrix: CMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagFile {
    pub mode: Option<Mode>,
    pub spec: DiagSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InputFile {
    Matrix(MatrixFile),
    Diag(DiagFile),
}

impl InputFile {
    pub fn mode(&self) -> Option<Mode> {
        match self {
            InputFile::Matrix(m) => m.mode,
            InputFile::Diag(d) => d.mode,
        }
    }
}

pub fn read_input(path: &Path) -> Result<(InputFile, Vec<u8>), ParseError> {
    let bytes = std::fs::read(path).map_err(|e| ParseError::Read {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| ParseError::Read {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    Ok((parse_input(&text)?, bytes))
}

/// Non-empty lines with comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_mode(line: usize, s: &str) -> Result<Mode, ParseError> {
    s.parse().map_err(|_| syntax(line, format!("unknown mode {s:?}")))
}

pub fn parse_input(text: &str) -> Result<InputFile, ParseError> {
    let first = content_lines(text).find(|(_, l)| !l.starts_with("mode:"));
    match first {
        Some((_, "diag")) => parse_diag(text).map(InputFile::Diag),
        _ => parse_matrix(text).map(InputFile::Matrix),
    }
}

pub fn parse_matrix(text: &str) -> Result<MatrixFile, ParseError> {
    let mut mode = None;
    let mut shape: Option<(usize, usize)> = None;
    let mut data = Vec::new();
    let mut rows_seen = 0;
    for (n, l) in content_lines(text) {
        if let Some(m) = l.strip_prefix("mode:") {
            mode = Some(parse_mode(n, m.trim())?);
            continue;
        }
        let Some((r, c)) = shape else {
            let mut words = l.split_whitespace();
            if words.next() != Some("dim") {
                return Err(syntax(n, "expected `dim <n>` or `dim <rows> <cols>`"));
            }
            let dims: Vec<usize> = words
                .map(|w| w.parse().map_err(|_| syntax(n, format!("bad dimension {w:?}"))))
                .collect::<Result<_, _>>()?;
            shape = Some(match dims[..] {
                [d] if d > 0 => (d, d),
                [r, c] if r > 0 && c > 0 => (r, c),
                _ => return Err(syntax(n, "dimensions must be one or two positive integers")),
            });
            continue;
        };
        if rows_seen == r {
            return Err(syntax(n, format!("more than {r} rows")));
        }
        let entries: Vec<C64> = l
            .split_whitespace()
            .map(|w| parse_complex(w).ok_or_else(|| syntax(n, format!("bad entry {w:?}"))))
            .collect::<Result<_, _>>()?;
        if entries.len() != c {
            return Err(syntax(n, format!("expected {c} entries, found {}", entries.len())));
        }
        data.extend(entries);
        rows_seen += 1;
    }
    let (r, c) = shape.ok_or(ParseError::Missing("`dim` header"))?;
    if rows_seen != r {
        return Err(ParseError::Invalid(format!("expected {r} rows, found {rows_seen}")));
    }
    let matrix = CMatrix::new(r, c, data).map_err(|e| ParseError::Invalid(e.to_string()))?;
    Ok(MatrixFile { mode, matrix })
}

pub fn parse_complex(s: &str) -> Option<C64> {
    let real = |t: &str| -> Option<f64> {
        let ok = !t.is_empty()
            && t.chars().all(|ch| ch.is_ascii_digit() || matches!(ch, '.' | '+' | '-'));
        ok.then(|| t.parse().ok()).flatten()
    };
    if let Some(body) = s.strip_suffix('i') {
        // Split before the sign of the imaginary part, if there is a real part.
        let cut = body.char_indices().skip(1).filter(|(_, ch)| matches!(ch, '+' | '-')).last();
        let (re, im) = match cut {
            Some((k, _)) => (real(&body[..k])?, &body[k..]),
            None => (0.0, body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            t => real(t)?,
        };
        Some(C64::new(re, im))
    } else {
        real(s).map(|re| C64::new(re, 0.0))
    }
}

pub fn parse_diag(text: &str) -> Result<DiagFile, ParseError> {
    let mut mode = None;
    let mut header = false;
    let mut head = Vec::new();
    let mut liminf = None;
    let mut limsup = None;
    let mut generator = None;
    let num = |n: usize, w: &str| -> Result<f64, ParseError> {
        w.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| syntax(n, format!("bad number {w:?}")))
    };
    for (n, l) in content_lines(text) {
        if l == "diag" && !header {
            header = true;
            continue;
        }
        let Some((key, value)) = l.split_once(':') else {
            return Err(syntax(n, "expected `key: value`"));
        };
        let value = value.trim();
        match key.trim() {
            "mode" => mode = Some(parse_mode(n, value)?),
            "head" => {
                head = value
                    .split_whitespace()
                    .map(|w| num(n, w))
                    .collect::<Result<_, _>>()?;
            }
            "liminf" => liminf = Some(num(n, value)?),
            "limsup" => limsup = Some(num(n, value)?),
            "generator" => {
                generator = Some(GenParser::new(value).parse().map_err(|m| syntax(n, m))?);
            }
            other => return Err(syntax(n, format!("unknown key {other:?}"))),
        }
    }
    if !header {
        return Err(ParseError::Missing("`diag` header"));
    }
    let spec = DiagSpec {
        head,
        liminf: liminf.ok_or(ParseError::Missing("liminf"))?,
        limsup: limsup.ok_or(ParseError::Missing("limsup"))?,
        generator,
    };
    spec.validate().map_err(|e| ParseError::Invalid(e.to_string()))?;
    Ok(DiagFile { mode, spec })
}

struct GenParser<'a> {
    rest: &'a str,
}

impl<'a> GenParser<'a> {
    fn new(s: &'a str) -> Self {
        Self { rest: s }
    }

    fn parse(mut self) -> Result<Generator, String> {
        let g = self.generator()?;
        if !self.rest.trim().is_empty() {
            return Err(format!("trailing input {:?}", self.rest.trim()));
        }
        Ok(g)
    }

    fn eat(&mut self, token: char) -> Result<(), String> {
        self.rest = self.rest.trim_start();
        self.rest = self.rest.strip_prefix(token).ok_or_else(|| format!("expected {token:?}"))?;
        Ok(())
    }

    fn word(&mut self) -> &'a str {
        self.rest = self.rest.trim_start();
        let end = self
            .rest
            .find(|ch: char| matches!(ch, '(' | ')' | ',') || ch.is_whitespace())
            .unwrap_or(self.rest.len());
        let (w, rest) = self.rest.split_at(end);
        self.rest = rest;
        w
    }

    fn number(&mut self) -> Result<f64, String> {
        let w = self.word();
        w.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| format!("bad number {w:?}"))
    }

    fn numbers<const N: usize>(&mut self) -> Result<[f64; N], String> {
        let mut out = [0.0; N];
        self.eat('(')?;
        for (k, slot) in out.iter_mut().enumerate() {
            if k > 0 {
                self.eat(',')?;
            }
            *slot = self.number()?;
        }
        self.eat(')')?;
        Ok(out)
    }

    fn generator(&mut self) -> Result<Generator, String> {
        match self.word() {
            "constant" => {
                let [c] = self.numbers()?;
                Ok(Generator::Constant(c))
            }
            "harmonic" => {
                let [limit, coeff] = self.numbers()?;
                Ok(Generator::Harmonic { limit, coeff })
            }
            "geometric" => {
                let [limit, coeff, ratio] = self.numbers()?;
                Ok(Generator::Geometric {
                    limit,
                    coeff,
                    ratio,
                })
            }
            "interleave" => {
                self.eat('(')?;
                let mut parts = vec![self.generator()?];
                while self.eat(',').is_ok() {
                    parts.push(self.generator()?);
                }
                self.eat(')')?;
                Ok(Generator::Interleave(parts))
            }
            w => Err(format!("unknown generator {w:?}")),
        }
    }
}

/// Shortest round-trip decimal, always with a decimal point.
pub fn format_real(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    let s = format!("{x}");
    if s.contains('.') {
        s
    } else {
        format!("{s}.0")
    }
}

pub fn format_complex(z: C64) -> String {
    if z.im == 0.0 {
        format_real(z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", format_real(z.re), format_real(-z.im))
    } else {
        format!("{}+{}i", format_real(z.re), format_real(z.im))
    }
}

pub fn write_matrix(file: &MatrixFile) -> String {
    let m = &file.matrix;
    let mut out = String::new();
    if let Some(mode) = file.mode {
        let _ = writeln!(out, "mode: {mode}");
    }
    if m.rows() == m.cols() {
        let _ = writeln!(out, "dim {}", m.rows());
    } else {
        let _ = writeln!(out, "dim {} {}", m.rows(), m.cols());
    }
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format_complex(m[(i, j)])).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

fn write_generator(g: &Generator) -> String {
    match g {
        Generator::Constant(c) => format!("constant({})", format_real(*c)),
        Generator::Harmonic { limit, coeff } => {
            format!("harmonic({}, {})", format_real(*limit), format_real(*coeff))
        }
        Generator::Geometric {
            limit,
            coeff,
            ratio,
        } => format!(
            "geometric({}, {}, {})",
            format_real(*limit),
            format_real(*coeff),
            format_real(*ratio)
        ),
        Generator::Interleave(parts) => {
            let inner: Vec<String> = parts.iter().map(write_generator).collect();
            format!("interleave({})", inner.join(", "))
        }
    }
}

pub fn write_diag(file: &DiagFile) -> String {
    let s = &file.spec;
    let mut out = String::from("diag\n");
    if let Some(mode) = file.mode {
        let _ = writeln!(out, "mode: {mode}");
    }
    if !s.head.is_empty() {
        let head: Vec<String> = s.head.iter().map(|x| format_real(*x)).collect();
        let _ = writeln!(out, "head: {}", head.join(" "));
    }
    let _ = writeln!(out, "liminf: {}", format_real(s.liminf));
    let _ = writeln!(out, "limsup: {}", format_real(s.limsup));
    if let Some(g) = &s.generator {
        let _ = writeln!(out, "generator: {}", write_generator(g));
    }
    out
}

/// Hermitian view of a parsed matrix, validated at the library tolerance.
pub fn hermitian(m: &CMatrix) -> Result<HermMatrix, ParseError> {
    HermMatrix::new(m.clone()).map_err(|e| ParseError::Invalid(e.to_string()))
}
