//! Command-line front end: the ideal grammar, subcommand dispatch and JSON
//! output.
//!
//! ```text
//! ideal := "0" | mono ("," mono)*
//! mono  := "1" | term ("*" term)*
//! term  := ("x" | "y") INT ("^" INT)? | ("x" | "y") INT "_" INT
//! ```

use std::collections::BTreeMap;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::decompose::{
    bpol_decomposition, decompose_oracle, decompose_strongly_stable, intersect_components,
    right_shift_check, IrreducibleComponent,
};
use crate::duality::{sigma_decomposition, sigma_ideal, star_dual, star_dual_witness};
use crate::error::{Error, Result};
use crate::homology::{
    adeg, betti_oracle, canonical_generators, ek_betti, lc_series_via_components,
    lc_series_via_dual, lc_series_via_gamma, BettiTable, LocalCohSeries,
};
use crate::ideal::{minimalize, MonomialIdeal};
use crate::monomial::Monomial;
use crate::polarize::{
    bpol_ideal, default_cols, depolarize, stdpol_ideal, transpose, GridIdeal, GridMonomial,
};
use crate::series::RationalSeries;
use crate::verify::{run_suite, CorpusSpec};

#[derive(Debug, Parser)]
#[command(
    name = "borel-dual",
    version,
    about = "Star duality for strongly stable monomial ideals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct IdealArgs {
    /// Ideal text, or `-` to read standard input.
    pub ideal: String,
    /// Number of variables (rows for grid input).
    #[arg(long)]
    pub vars: Option<usize>,
    /// Number of grid columns.
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecomposeMethod {
    Borel,
    Oracle,
    Psi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BettiMethod {
    Ek,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LcMethod {
    Dual,
    Components,
    Gamma,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Strong stability; with --from-components, the right-shift criterion.
    Check {
        #[command(flatten)]
        args: IdealArgs,
        /// Read a list of components `(a_1,...,a_t); ...` instead of an ideal.
        #[arg(long)]
        from_components: bool,
    },
    /// Alternative polarization on the n × d grid.
    Bpol {
        #[command(flatten)]
        args: IdealArgs,
    },
    /// Standard polarization.
    Pol {
        #[command(flatten)]
        args: IdealArgs,
    },
    /// Collapse a grid ideal row by row.
    Depolarize {
        #[command(flatten)]
        args: IdealArgs,
    },
    /// Swap rows and columns of a grid ideal.
    Transpose {
        #[command(flatten)]
        args: IdealArgs,
    },
    /// The strongly stable dual I*.
    Dual {
        #[command(flatten)]
        args: IdealArgs,
        /// Also print both sides of the grid-level identity.
        #[arg(long)]
        witness: bool,
    },
    /// Irreducible decomposition.
    Decompose {
        #[command(flatten)]
        args: IdealArgs,
        #[arg(long, value_enum, default_value = "borel")]
        method: DecomposeMethod,
    },
    /// The squarefree ideal I^σ.
    Sigma {
        #[command(flatten)]
        args: IdealArgs,
        /// Also list its components.
        #[arg(long)]
        decompose: bool,
    },
    /// Graded Betti numbers of the ideal.
    Betti {
        #[command(flatten)]
        args: IdealArgs,
        #[arg(long, value_enum, default_value = "ek")]
        method: BettiMethod,
    },
    /// Hilbert series of local cohomology, in λ^{-1}.
    Lc {
        #[command(flatten)]
        args: IdealArgs,
        #[arg(long, value_enum, default_value = "components")]
        method: LcMethod,
    },
    /// Arithmetic degree strata, total and degree.
    Adeg {
        #[command(flatten)]
        args: IdealArgs,
    },
    /// Generators of the canonical module of the polarization.
    Canonical {
        #[command(flatten)]
        args: IdealArgs,
    },
    /// Run the randomized cross-check suite and print a JSON report.
    Verify {
        #[arg(long, env = "BOREL_DUAL_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Largest number of variables.
        #[arg(long, default_value_t = 3)]
        vars: usize,
        /// Largest generator degree (grid columns).
        #[arg(long, default_value_t = 3)]
        cols: u32,
        #[arg(long, default_value_t = 6)]
        max_generators: usize,
    },
}

/// What a command writes and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, warnings: Vec<String>) -> Self {
        Self {
            stdout,
            warnings,
            code: 0,
        }
    }
}

/// Exit status for an error: 1 for input, 2 for preconditions, 3 for
/// cross-check failures.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Parse { .. } => 1,
        Error::CrossCheck(_) => 3,
        _ => 2,
    }
}

// ---------------------------------------------------------------- parsing

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Term {
    Var { index: usize, exp: u32 },
    Cell { row: usize, col: usize },
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.bump();
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn error(&self, at: Pos, message: impl Into<String>) -> Error {
        Error::Parse {
            line: at.line,
            column: at.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        let at = self.pos();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(self.pos(), format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(at, format!("expected '{want}', found end of input"))),
        }
    }

    fn int(&mut self) -> Result<(u64, Pos)> {
        self.skip_ws();
        let at = self.pos();
        let mut digits = String::new();
        while let Some(&c) = self.chars.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            digits.push(c);
            self.bump();
        }
        if digits.is_empty() {
            let found = self
                .chars
                .peek()
                .map_or("end of input".to_string(), |c| format!("'{c}'"));
            return Err(self.error(at, format!("expected a number, found {found}")));
        }
        let value = digits
            .parse()
            .map_err(|_| self.error(at, format!("number {digits} is too large")))?;
        Ok((value, at))
    }

    fn positive(&mut self, what: &str) -> Result<(u64, Pos)> {
        let (value, at) = self.int()?;
        if value == 0 {
            return Err(self.error(at, format!("{what} must be positive")));
        }
        Ok((value, at))
    }

    fn term(&mut self) -> Result<(Term, Pos)> {
        let at = self.pos();
        match self.peek() {
            Some('x' | 'y') => {
                self.bump();
            }
            Some(c) => {
                return Err(self.error(self.pos(), format!("expected a variable, found '{c}'")))
            }
            None => return Err(self.error(at, "expected a variable, found end of input")),
        }
        let (index, _) = self.positive("variable index")?;
        let index =
            usize::try_from(index).map_err(|_| self.error(at, "variable index too large"))?;
        match self.peek() {
            Some('_') => {
                self.bump();
                let (col, _) = self.positive("column index")?;
                let col =
                    usize::try_from(col).map_err(|_| self.error(at, "column index too large"))?;
                Ok((Term::Cell { row: index, col }, at))
            }
            Some('^') => {
                self.bump();
                let (exp, exp_at) = self.positive("exponent")?;
                let exp =
                    u32::try_from(exp).map_err(|_| self.error(exp_at, "exponent too large"))?;
                Ok((Term::Var { index, exp }, at))
            }
            _ => Ok((Term::Var { index, exp: 1 }, at)),
        }
    }

    fn mono(&mut self) -> Result<Vec<(Term, Pos)>> {
        if self.peek() == Some('1') {
            self.bump();
            return Ok(Vec::new());
        }
        let mut terms = vec![self.term()?];
        while self.peek() == Some('*') {
            self.bump();
            terms.push(self.term()?);
        }
        Ok(terms)
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(self.pos(), format!("unexpected '{c}'"))),
        }
    }
}

/// `None` for the zero ideal, otherwise one term list per generator.
type Parsed = Option<Vec<Vec<(Term, Pos)>>>;

fn parse_terms(text: &str) -> Result<Parsed> {
    let mut lexer = Lexer::new(text);
    if text.trim() == "0" {
        return Ok(None);
    }
    let mut monos = vec![lexer.mono()?];
    while lexer.peek() == Some(',') {
        lexer.bump();
        monos.push(lexer.mono()?);
    }
    lexer.finish()?;
    Ok(Some(monos))
}

fn parse_error(at: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: at.line,
        column: at.column,
        message: message.into(),
    }
}

/// An ideal read from text, with any warnings produced on the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedIdeal {
    pub ideal: MonomialIdeal,
    pub warnings: Vec<String>,
}

fn minimalization_warning(given: usize, kept: usize) -> Vec<String> {
    if given > kept {
        vec![format!(
            "{given} generators given, {kept} after removing redundant ones"
        )]
    } else {
        Vec::new()
    }
}

/// Parses an ideal in ordinary variables. The ring has `vars` variables, or
/// as many as the largest index used.
pub fn parse_ideal(text: &str, vars: Option<usize>) -> Result<ParsedIdeal> {
    let Some(monos) = parse_terms(text)? else {
        return Ok(ParsedIdeal {
            ideal: MonomialIdeal::zero(vars.unwrap_or(1)),
            warnings: Vec::new(),
        });
    };
    let mut largest = 0;
    for (term, at) in monos.iter().flatten() {
        match *term {
            Term::Var { index, .. } => largest = largest.max(index),
            Term::Cell { .. } => {
                return Err(parse_error(*at, "grid variable in an ordinary ideal"));
            }
        }
    }
    let n = vars.unwrap_or(largest.max(1));
    let mut gens = Vec::with_capacity(monos.len());
    for mono in &monos {
        let mut exps = vec![0u32; n];
        for (term, at) in mono {
            if let Term::Var { index, exp } = *term {
                if index > n {
                    return Err(parse_error(
                        *at,
                        format!("variable x{index} outside a ring of {n} variables"),
                    ));
                }
                exps[index - 1] = exps[index - 1]
                    .checked_add(exp)
                    .ok_or_else(|| parse_error(*at, "exponent too large"))?;
            }
        }
        gens.push(Monomial::new(exps));
    }
    let given = gens.len();
    let ideal = minimalize(gens, n)?;
    let warnings = minimalization_warning(given, ideal.len());
    Ok(ParsedIdeal { ideal, warnings })
}

/// Parses a squarefree ideal in grid variables `x{row}_{col}`.
pub fn parse_grid_ideal(
    text: &str,
    rows: Option<usize>,
    cols: Option<usize>,
) -> Result<(GridIdeal, Vec<String>)> {
    let Some(monos) = parse_terms(text)? else {
        return Ok((
            GridIdeal::zero(rows.unwrap_or(1), cols.unwrap_or(1)),
            Vec::new(),
        ));
    };
    let (mut max_row, mut max_col) = (0, 0);
    for (term, at) in monos.iter().flatten() {
        match *term {
            Term::Cell { row, col } => {
                max_row = max_row.max(row);
                max_col = max_col.max(col);
            }
            Term::Var { .. } => return Err(parse_error(*at, "expected a grid variable like x1_2")),
        }
    }
    let rows = rows.unwrap_or(max_row.max(1));
    let cols = cols.unwrap_or(max_col.max(1));
    let mut gens = Vec::with_capacity(monos.len());
    for mono in &monos {
        let mut cells = Vec::with_capacity(mono.len());
        for (term, at) in mono {
            if let Term::Cell { row, col } = *term {
                if row > rows || col > cols {
                    return Err(parse_error(
                        *at,
                        format!("cell ({row},{col}) outside a {rows} x {cols} grid"),
                    ));
                }
                if cells.contains(&(row, col)) {
                    return Err(parse_error(*at, "repeated grid variable"));
                }
                cells.push((row, col));
            }
        }
        gens.push(GridMonomial::new(rows, cols, cells)?);
    }
    let given = gens.len();
    let grid = GridIdeal::new(rows, cols, gens)?;
    let warnings = minimalization_warning(given, grid.len());
    Ok((grid, warnings))
}

/// Parses `(a_1,...,a_t); (b_1,...)`; separators between tuples are
/// optional.
pub fn parse_components(text: &str) -> Result<Vec<IrreducibleComponent>> {
    let mut lexer = Lexer::new(text);
    let mut out = Vec::new();
    while lexer.peek().is_some() {
        let at = lexer.pos();
        lexer.expect('(')?;
        let mut a = vec![u32::try_from(lexer.positive("component exponent")?.0)
            .map_err(|_| parse_error(at, "exponent too large"))?];
        while lexer.peek() == Some(',') {
            lexer.bump();
            let (v, v_at) = lexer.positive("component exponent")?;
            a.push(u32::try_from(v).map_err(|_| parse_error(v_at, "exponent too large"))?);
        }
        lexer.expect(')')?;
        out.push(IrreducibleComponent::new(a).map_err(|e| parse_error(at, e.to_string()))?);
        if matches!(lexer.peek(), Some(';' | ',')) {
            lexer.bump();
        }
    }
    if out.is_empty() {
        return Err(parse_error(lexer.pos(), "expected at least one component"));
    }
    Ok(out)
}

// ------------------------------------------------------------------- JSON

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonSeries {
    pub num: BTreeMap<String, serde_json::Number>,
    pub denpow: u32,
}

impl From<&RationalSeries> for JsonSeries {
    fn from(s: &RationalSeries) -> Self {
        Self {
            num: s
                .numerator()
                .iter()
                .map(|(e, c)| {
                    let coeff = c
                        .to_string()
                        .parse()
                        .expect("integers are valid JSON numbers");
                    (e.to_string(), coeff)
                })
                .collect(),
            denpow: s.denom_power(),
        }
    }
}

impl JsonSeries {
    pub fn to_series(&self) -> Option<RationalSeries> {
        let mut num = BTreeMap::new();
        for (e, c) in &self.num {
            num.insert(
                e.parse::<i64>().ok()?,
                c.to_string().parse::<BigInt>().ok()?,
            );
        }
        Some(RationalSeries::new(num, self.denpow))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonAdeg {
    pub strata: BTreeMap<String, u64>,
    pub total: u64,
    pub deg: u64,
}

/// Output document; every command fills the fields it computes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<BTreeMap<String, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lc: Option<BTreeMap<String, JsonSeries>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adeg: Option<JsonAdeg>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strongly_stable: Option<bool>,
}

impl JsonOutput {
    pub fn of_ideal(ideal: &MonomialIdeal, d: Option<usize>) -> Self {
        Self {
            n: Some(ideal.num_vars()),
            d,
            generators: Some(exponent_rows(ideal)),
            ..Self::default()
        }
    }

    pub fn of_grid(grid: &GridIdeal) -> Self {
        Self {
            n: Some(grid.rows()),
            d: Some(grid.cols()),
            generators: Some(exponent_rows(grid.flat())),
            ..Self::default()
        }
    }

    /// The ideal described by `n` and `generators`.
    pub fn ideal(&self) -> Result<MonomialIdeal> {
        let n = self.n.unwrap_or(1);
        let gens = self.generators.clone().unwrap_or_default();
        let vars = gens.first().map_or(n, Vec::len);
        minimalize(gens.into_iter().map(Monomial::new), vars)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("output serializes")
    }
}

fn exponent_rows(ideal: &MonomialIdeal) -> Vec<Vec<u32>> {
    ideal
        .generators()
        .iter()
        .map(|m| m.exponents().to_vec())
        .collect()
}

fn betti_json(table: &BettiTable) -> BTreeMap<String, u64> {
    table
        .entries()
        .iter()
        .map(|((i, j), v)| (format!("{i},{j}"), *v))
        .collect()
}

fn lc_json(series: &LocalCohSeries) -> BTreeMap<String, JsonSeries> {
    series
        .entries()
        .iter()
        .map(|(i, s)| (i.to_string(), JsonSeries::from(s)))
        .collect()
}

// --------------------------------------------------------------- dispatch

fn read_input(text: &str, stdin: &mut dyn Read) -> Result<String> {
    if text != "-" {
        return Ok(text.to_string());
    }
    let mut buf = String::new();
    stdin.read_to_string(&mut buf).map_err(|e| Error::Parse {
        line: 1,
        column: 1,
        message: format!("cannot read standard input: {e}"),
    })?;
    Ok(buf)
}

fn join_lines<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

struct Input {
    ideal: MonomialIdeal,
    cols: usize,
    json: bool,
    warnings: Vec<String>,
}

fn load(args: &IdealArgs, stdin: &mut dyn Read) -> Result<Input> {
    let text = read_input(&args.ideal, stdin)?;
    let parsed = parse_ideal(&text, args.vars)?;
    let cols = args.cols.unwrap_or_else(|| default_cols(&parsed.ideal));
    Ok(Input {
        ideal: parsed.ideal,
        cols,
        json: args.json,
        warnings: parsed.warnings,
    })
}

fn emit(json: bool, doc: impl FnOnce() -> JsonOutput, text: impl FnOnce() -> String) -> String {
    if json {
        doc().to_json()
    } else {
        text()
    }
}

/// Runs one command. Errors carry the exit status through [`exit_code`].
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome> {
    match &cli.command {
        Command::Check {
            args,
            from_components,
        } => check(args, *from_components, stdin),
        Command::Bpol { args } => {
            let input = load(args, stdin)?;
            let grid = bpol_ideal(&input.ideal, input.cols)?;
            let out = emit(
                input.json,
                || JsonOutput::of_grid(&grid),
                || grid.to_string(),
            );
            Ok(Outcome::ok(out, input.warnings))
        }
        Command::Pol { args } => {
            let input = load(args, stdin)?;
            let grid = stdpol_ideal(&input.ideal, input.cols)?;
            let out = emit(
                input.json,
                || JsonOutput::of_grid(&grid),
                || grid.to_string(),
            );
            Ok(Outcome::ok(out, input.warnings))
        }
        Command::Depolarize { args } => {
            let text = read_input(&args.ideal, stdin)?;
            let (grid, warnings) = parse_grid_ideal(&text, args.vars, args.cols)?;
            let ideal = depolarize(&grid);
            let out = emit(
                args.json,
                || JsonOutput::of_ideal(&ideal, Some(grid.cols())),
                || ideal.to_string(),
            );
            Ok(Outcome::ok(out, warnings))
        }
        Command::Transpose { args } => {
            let text = read_input(&args.ideal, stdin)?;
            let (grid, warnings) = parse_grid_ideal(&text, args.vars, args.cols)?;
            let t = transpose(&grid);
            let out = emit(args.json, || JsonOutput::of_grid(&t), || t.to_string());
            Ok(Outcome::ok(out, warnings))
        }
        Command::Dual { args, witness } => dual(args, *witness, stdin),
        Command::Decompose { args, method } => decompose(args, *method, stdin),
        Command::Sigma { args, decompose } => sigma(args, *decompose, stdin),
        Command::Betti { args, method } => {
            let input = load(args, stdin)?;
            let table = match method {
                BettiMethod::Ek => ek_betti(&input.ideal)?,
                BettiMethod::Oracle => betti_oracle(&input.ideal)?,
            };
            let out = emit(
                input.json,
                || JsonOutput {
                    betti: Some(betti_json(&table)),
                    ..JsonOutput::of_ideal(&input.ideal, None)
                },
                || table.to_string(),
            );
            Ok(Outcome::ok(out, input.warnings))
        }
        Command::Lc { args, method } => lc(args, *method, stdin),
        Command::Adeg { args } => {
            let input = load(args, stdin)?;
            let n = input.ideal.num_vars();
            let e = decompose_strongly_stable(&input.ideal)?;
            let a = adeg(&e, n);
            let out = emit(
                input.json,
                || JsonOutput {
                    adeg: Some(JsonAdeg {
                        strata: a.strata.iter().map(|(i, v)| (i.to_string(), *v)).collect(),
                        total: a.total,
                        deg: a.degree,
                    }),
                    ..JsonOutput::of_ideal(&input.ideal, None)
                },
                || {
                    let mut lines: Vec<String> = a
                        .strata
                        .iter()
                        .map(|(i, v)| format!("adeg_{i} = {v}"))
                        .collect();
                    lines.push(format!("adeg = {}", a.total));
                    lines.push(format!("deg = {}", a.degree));
                    lines.join("\n")
                },
            );
            Ok(Outcome::ok(out, input.warnings))
        }
        Command::Canonical { args } => {
            let input = load(args, stdin)?;
            let gens = canonical_generators(&input.ideal, input.cols)?;
            let rows = input.ideal.num_vars();
            let out = emit(
                input.json,
                || JsonOutput {
                    n: Some(rows),
                    d: Some(input.cols),
                    generators: Some(
                        gens.iter()
                            .map(|g| g.to_flat().exponents().to_vec())
                            .collect(),
                    ),
                    ..JsonOutput::default()
                },
                || join_lines(&gens, ", "),
            );
            Ok(Outcome::ok(out, input.warnings))
        }
        Command::Verify {
            seed,
            trials,
            vars,
            cols,
            max_generators,
        } => {
            let spec = CorpusSpec {
                seed: *seed,
                min_vars: 1,
                max_vars: *vars,
                min_degree: 1,
                max_degree: *cols,
                max_generators: *max_generators,
                trials: *trials,
            };
            let report = run_suite(&spec)?;
            let code = if report.all_passed() { 0 } else { 3 };
            Ok(Outcome {
                stdout: report.to_json(),
                warnings: Vec::new(),
                code,
            })
        }
    }
}

fn check(args: &IdealArgs, from_components: bool, stdin: &mut dyn Read) -> Result<Outcome> {
    let text = read_input(&args.ideal, stdin)?;
    if from_components {
        let components = parse_components(&text)?;
        let n = args.vars.unwrap_or_else(|| {
            components
                .iter()
                .map(IrreducibleComponent::t)
                .max()
                .unwrap_or(1)
        });
        let ok = right_shift_check(&components, n);
        let ideal = intersect_components(&components, n)?;
        let stdout = emit(
            args.json,
            || JsonOutput {
                components: Some(components.iter().map(|a| a.exponents().to_vec()).collect()),
                strongly_stable: Some(ok),
                ..JsonOutput::of_ideal(&ideal, None)
            },
            || {
                let verdict = if ok {
                    "strongly stable"
                } else {
                    "not strongly stable"
                };
                format!("{ideal}\n{verdict}")
            },
        );
        return Ok(Outcome {
            stdout,
            warnings: Vec::new(),
            code: if ok { 0 } else { 2 },
        });
    }
    let parsed = parse_ideal(&text, args.vars)?;
    let ok = parsed.ideal.is_strongly_stable();
    let stdout = emit(
        args.json,
        || JsonOutput {
            strongly_stable: Some(ok),
            ..JsonOutput::of_ideal(&parsed.ideal, None)
        },
        || {
            if ok {
                "strongly stable"
            } else {
                "not strongly stable"
            }
            .to_string()
        },
    );
    Ok(Outcome {
        stdout,
        warnings: parsed.warnings,
        code: if ok { 0 } else { 2 },
    })
}

fn dual(args: &IdealArgs, witness: bool, stdin: &mut dyn Read) -> Result<Outcome> {
    let input = load(args, stdin)?;
    let n = input.ideal.num_vars();
    let dual = star_dual(&input.ideal, input.cols)?;
    let mut lines = vec![dual.display_with('y')];
    if witness {
        let lhs = bpol_ideal(&dual, n)?;
        let rhs = star_dual_witness(&input.ideal, input.cols)?;
        if lhs != rhs {
            return Err(Error::CrossCheck(format!(
                "b-pol(I*) = {} but (b-pol(I)^∨)^t = {}",
                lhs.display_with('y'),
                rhs.display_with('y')
            )));
        }
        lines.push(format!("b-pol(I*) = {}", lhs.display_with('y')));
        lines.push(format!("(b-pol(I)^∨)^t = {}", rhs.display_with('y')));
    }
    let out = emit(
        input.json,
        || JsonOutput::of_ideal(&dual, Some(n)),
        || lines.join("\n"),
    );
    Ok(Outcome::ok(out, input.warnings))
}

fn decompose(args: &IdealArgs, method: DecomposeMethod, stdin: &mut dyn Read) -> Result<Outcome> {
    let input = load(args, stdin)?;
    let n = input.ideal.num_vars();
    let (text, rows): (String, Vec<Vec<u32>>) = match method {
        DecomposeMethod::Borel => {
            let e = decompose_strongly_stable(&input.ideal)?;
            (
                join_lines(&e, "; "),
                e.iter().map(|a| a.exponents().to_vec()).collect(),
            )
        }
        DecomposeMethod::Oracle => {
            let e = decompose_oracle(&input.ideal)?;
            let rows = e
                .iter()
                .map(|c| {
                    (1..=n)
                        .map(|i| c.powers().get(&i).copied().unwrap_or(0))
                        .collect()
                })
                .collect();
            (join_lines(&e, "; "), rows)
        }
        DecomposeMethod::Psi => {
            bpol_ideal(&input.ideal, input.cols)?;
            let b = bpol_decomposition(&decompose_strongly_stable(&input.ideal)?);
            let rows = b
                .iter()
                .map(|c| c.columns().iter().map(|&x| x as u32).collect())
                .collect();
            (join_lines(&b, "; "), rows)
        }
    };
    let out = emit(
        input.json,
        || JsonOutput {
            components: Some(rows.clone()),
            ..JsonOutput::of_ideal(&input.ideal, Some(input.cols))
        },
        || text.clone(),
    );
    Ok(Outcome::ok(out, input.warnings))
}

fn sigma(args: &IdealArgs, with_components: bool, stdin: &mut dyn Read) -> Result<Outcome> {
    let input = load(args, stdin)?;
    let s = sigma_ideal(&input.ideal, input.cols)?;
    let mut lines = vec![s.to_string()];
    let mut rows = None;
    if with_components {
        let predicted = sigma_decomposition(&decompose_strongly_stable(&input.ideal)?);
        if predicted != decompose_oracle(&s)? {
            return Err(Error::CrossCheck(format!(
                "predicted components {} differ from the direct decomposition",
                join_lines(&predicted, "; ")
            )));
        }
        lines.push(join_lines(&predicted, "; "));
        rows = Some(
            predicted
                .iter()
                .map(|c| {
                    (1..=s.num_vars())
                        .map(|i| c.powers().get(&i).copied().unwrap_or(0))
                        .collect()
                })
                .collect(),
        );
    }
    let out = emit(
        input.json,
        || JsonOutput {
            components: rows.clone(),
            ..JsonOutput::of_ideal(&s, Some(input.cols))
        },
        || lines.join("\n"),
    );
    Ok(Outcome::ok(out, input.warnings))
}

fn lc(args: &IdealArgs, method: LcMethod, stdin: &mut dyn Read) -> Result<Outcome> {
    let input = load(args, stdin)?;
    let n = input.ideal.num_vars();
    input.ideal.require_strongly_stable_proper()?;
    let components = || decompose_strongly_stable(&input.ideal);
    let series = match method {
        LcMethod::Dual => lc_series_via_dual(&input.ideal, input.cols)?,
        LcMethod::Components => lc_series_via_components(&components()?, n),
        LcMethod::Gamma => lc_series_via_gamma(&bpol_decomposition(&components()?), n),
        LcMethod::All => {
            let e = components()?;
            let via_dual = lc_series_via_dual(&input.ideal, input.cols)?;
            let via_components = lc_series_via_components(&e, n);
            let via_gamma = lc_series_via_gamma(&bpol_decomposition(&e), n);
            if via_dual != via_components || via_components != via_gamma {
                return Err(Error::CrossCheck(format!(
                    "local cohomology series disagree:\n{via_dual}\n{via_components}\n{via_gamma}"
                )));
            }
            via_components
        }
    };
    let out = emit(
        input.json,
        || JsonOutput {
            lc: Some(lc_json(&series)),
            ..JsonOutput::of_ideal(&input.ideal, Some(input.cols))
        },
        || series.to_string(),
    );
    Ok(Outcome::ok(out, input.warnings))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Outcome> {
        let mut argv = vec!["borel-dual"];
        argv.extend_from_slice(args);
        let cli = Cli::try_parse_from(argv).expect("valid arguments");
        run(&cli, &mut std::io::empty())
    }

    fn parse_err(text: &str) -> (usize, usize) {
        match parse_ideal(text, None) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_the_grammar() {
        let p = parse_ideal("x1^2, x1*x2, x2^2", None).unwrap();
        assert_eq!(p.ideal.num_vars(), 2);
        assert_eq!(p.ideal.len(), 3);
        assert!(p.warnings.is_empty());
        assert_eq!(
            parse_ideal("x1^2, x1*x2", Some(4))
                .unwrap()
                .ideal
                .num_vars(),
            4
        );
        assert_eq!(
            parse_ideal(" y1 ^ 2 ,\n y1 * y2 ", None)
                .unwrap()
                .ideal
                .to_string(),
            "x1^2, x1*x2"
        );
        assert!(parse_ideal("0", Some(3)).unwrap().ideal.is_zero());
        assert!(parse_ideal("1", None).unwrap().ideal.is_unit());
        let p = parse_ideal("x1, x1*x2", None).unwrap();
        assert_eq!(p.ideal.to_string(), "x1");
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn reports_error_positions() {
        assert_eq!(parse_err("x1^0"), (1, 4));
        assert_eq!(parse_err("x0"), (1, 2));
        assert_eq!(parse_err("x1,\n  x2^-1"), (2, 6));
        assert_eq!(parse_err("x1 x2"), (1, 4));
        assert_eq!(parse_err("x1,"), (1, 4));
        assert_eq!(parse_err("x1_2"), (1, 1));
        assert!(matches!(
            parse_ideal("x3", Some(2)),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn parses_grid_ideals_and_components() {
        let (g, _) = parse_grid_ideal("x1_1*x2_2, x2_1", None, None).unwrap();
        assert_eq!((g.rows(), g.cols()), (2, 2));
        assert_eq!(g.to_string(), "x2_1, x1_1*x2_2");
        assert!(parse_grid_ideal("x1_1*x1_1", None, None).is_err());
        let c = parse_components("(1,3); (2,2,1); (3,1,1)").unwrap();
        assert_eq!(join_lines(&c, "; "), "(1,3); (2,2,1); (3,1,1)");
        assert!(parse_components("(1,0)").is_err());
        assert!(parse_components("").is_err());
    }

    #[test]
    fn dual_command() {
        let out = run_args(&["dual", "x1^2,x1*x2,x1*x3,x2^2,x2*x3"]).unwrap();
        assert_eq!(out.stdout, "y1^2, y1*y2^2, y2^3");
        let out = run_args(&["dual", "x1^2,x1*x2,x1*x3,x2^2,x2*x3", "--witness"]).unwrap();
        assert_eq!(out.stdout.lines().count(), 3);
        let err = run_args(&["dual", "x2"]).unwrap_err();
        assert_eq!(exit_code(&err), 2);
    }

    #[test]
    fn lc_and_decompose_commands() {
        let out = run_args(&[
            "lc",
            "x1^2,x1*x2,x1*x3,x2^2,x2*x3^2",
            "--method",
            "components",
        ])
        .unwrap();
        assert!(out.stdout.starts_with("i=0: λ^-2 + 2λ^-1"));
        let all = run_args(&["lc", "x1^2,x1*x2,x1*x3,x2^2,x2*x3^2", "--method", "all"]).unwrap();
        assert_eq!(all.stdout, out.stdout);
        let out = run_args(&["decompose", "x1^3,x1^2*x2,x1*x2^2,x1*x2*x3^2,x1^2*x3^2"]).unwrap();
        assert_eq!(out.stdout, "(1); (2,1); (2,2,2); (3,1,2)");
    }

    #[test]
    fn check_command_exit_codes() {
        assert_eq!(run_args(&["check", "x1^2, x1*x2, x2^2"]).unwrap().code, 0);
        assert_eq!(run_args(&["check", "x2"]).unwrap().code, 2);
        let shift = ["check", "--from-components", "(1,3); (2,2,1); (3,1,1)"];
        assert_eq!(run_args(&shift).unwrap().code, 2);
        let shift = ["check", "--from-components", "(1); (2,1); (2,2,2); (3,1,2)"];
        assert_eq!(run_args(&shift).unwrap().code, 0);
        assert_eq!(exit_code(&run_args(&["bpol", "x1^"]).unwrap_err()), 1);
    }

    #[test]
    fn json_round_trip() {
        let out = run_args(&["lc", "x1^2,x1*x2,x1*x3,x2^2,x2*x3", "--json"]).unwrap();
        let doc: JsonOutput = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(doc.to_json(), out.stdout);
        let entry = doc.lc.as_ref().unwrap()["0"].to_series().unwrap();
        assert_eq!(entry.to_string(), "2λ^-1");
        assert_eq!(
            doc.ideal().unwrap().to_string(),
            "x1^2, x1*x2, x1*x3, x2^2, x2*x3"
        );
        let out = run_args(&["betti", "x1^2,x1*x2,x1*x3,x2^2,x2*x3", "--json"]).unwrap();
        let doc: JsonOutput = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(doc.betti.unwrap()["1,3"], 6);
    }
}
