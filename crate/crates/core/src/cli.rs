//! The `lcdmds` command line.
//!
//! Exit codes: 0 success, 1 a requested property does not hold, 2 usage,
//! format or cap errors, 3 no construction available.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::caps::Caps;
use crate::code::LinearCode;
use crate::codefile::CodeFile;
use crate::construct::lcd_mds;
use crate::error::{Error, Result};
use crate::gf::{prime_power, FieldSpec};
use crate::matrix::Form;
use crate::oracle;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNAVAILABLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "lcdmds", version, about = "LCD MDS codes over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe GF(p^m): modulus, primitive element, optional tables.
    Field {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
        /// Print addition and multiplication tables (q <= 64).
        #[arg(long)]
        tables: bool,
    },
    /// Build an [n, k] LCD MDS code and write it as a code file.
    Construct {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "euclidean")]
        form: Form,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check properties of a code file.
    Verify {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "lcd,mds")]
        props: Vec<Prop>,
        /// Cross-check each property with the brute-force oracles.
        #[arg(long)]
        oracle: bool,
    },
    /// Run the dispatcher over every [n, k] with n <= q + 1.
    Table {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "euclidean")]
        form: Form,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact minimum distance of a code file.
    Distance {
        file: PathBuf,
        /// Maximum number of messages to enumerate.
        #[arg(long)]
        cap: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Prop {
    Lcd,
    Hlcd,
    Mds,
    So,
    Hso,
    Sd,
    /// Minimum distance equals n - k + 1.
    Distance,
}

impl Prop {
    fn name(self) -> &'static str {
        match self {
            Prop::Lcd => "lcd",
            Prop::Hlcd => "hlcd",
            Prop::Mds => "mds",
            Prop::So => "so",
            Prop::Hso => "hso",
            Prop::Sd => "sd",
            Prop::Distance => "distance",
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_unavailable() {
        EXIT_UNAVAILABLE
    } else {
        EXIT_USAGE
    }
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Field { p, m, tables } => cmd_field(*p, *m, *tables).map(|s| (s, EXIT_OK)),
        Command::Construct { q, n, k, form, out: path } => cmd_construct(*q, *n, *k, *form, path.as_deref()),
        Command::Verify { file, props, oracle } => cmd_verify(file, props, *oracle),
        Command::Table { q, form, jobs, out: path } => cmd_table_to(*q, *form, *jobs as usize, path.as_deref()),
        Command::Distance { file, cap } => cmd_distance(file, *cap).map(|s| (s, EXIT_OK)),
    };
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            exit_code(&e)
        }
    }
}

pub fn field_for_order(q: u64) -> Result<FieldSpec> {
    let (p, m) = prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
    FieldSpec::new(p, m)
}

fn read_code_file(path: &Path) -> Result<CodeFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    CodeFile::parse(&text)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
}

fn poly_string(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    terms.join(" + ")
}

pub fn cmd_field(p: u32, m: u32, tables: bool) -> Result<String> {
    let f = FieldSpec::new(p, m)?;
    let mut s = String::new();
    let _ = writeln!(s, "field GF({}^{}) q={}", p, m, f.q());
    let coeffs: Vec<String> = f.modulus().iter().map(u32::to_string).collect();
    let _ = writeln!(s, "modulus {} ({})", coeffs.join(" "), poly_string(f.modulus()));
    let _ = writeln!(s, "gamma {}", f.gamma());
    let _ = writeln!(s, "arithmetic {}", if f.has_tables() { "log tables" } else { "polynomial reduction" });
    if tables {
        if f.q() > 64 {
            return Err(Error::InvalidArgument(format!("tables are limited to q <= 64, got {}", f.q())));
        }
        for (name, op) in [("add", 0), ("mul", 1)] {
            let _ = writeln!(s, "{name}");
            for a in f.elements() {
                let row: Vec<String> = f
                    .elements()
                    .map(|b| if op == 0 { f.add(a, b) } else { f.mul(a, b) }.to_string())
                    .collect();
                let _ = writeln!(s, "{}", row.join(" "));
            }
        }
    }
    Ok(s)
}

pub fn cmd_construct(q: u64, n: usize, k: usize, form: Form, out: Option<&Path>) -> Result<(String, i32)> {
    let f = field_for_order(q)?;
    let r = lcd_mds(&f, n, k, form)?;
    let text = CodeFile::new(r.code, Some(r.provenance.clone())).render();
    match out {
        Some(path) => {
            write_file(path, &text)?;
            Ok((format!("wrote [{n},{k}] {form} LCD MDS code over GF({q}) to {}\n", path.display()), EXIT_OK))
        }
        None => Ok((text, EXIT_OK)),
    }
}

fn check_prop(code: &LinearCode, prop: Prop) -> Result<(bool, String)> {
    let caps = Caps::global();
    Ok(match prop {
        Prop::Lcd => {
            let h = code.hull_dim(Form::Euclidean)?;
            (h == 0, format!("hull_dim {h}"))
        }
        Prop::Hlcd => {
            let h = code.hull_dim(Form::Hermitian)?;
            (h == 0, format!("hermitian_hull_dim {h}"))
        }
        Prop::Mds => {
            let r = code.is_mds_with_cap(caps.subsets)?;
            let extra = match r.witness {
                Some(w) => format!("dependent columns {w:?}"),
                None => "every k columns independent".into(),
            };
            (r.mds, extra)
        }
        Prop::So => (code.is_self_orthogonal(Form::Euclidean)?, String::new()),
        Prop::Hso => (code.is_self_orthogonal(Form::Hermitian)?, String::new()),
        Prop::Sd => (code.is_self_dual(Form::Euclidean)?, String::new()),
        Prop::Distance => {
            let d = code.min_distance(caps.codewords)?.d;
            (d == code.n() - code.k() + 1, format!("d {d}"))
        }
    })
}

/// Independent recomputation of `prop`, where an oracle exists.
fn oracle_prop(code: &LinearCode, prop: Prop) -> Result<Option<bool>> {
    let caps = Caps::global();
    Ok(match prop {
        Prop::Lcd => Some(oracle::hull_basis_bruteforce(code, Form::Euclidean)?.rows() == 0),
        Prop::Hlcd => Some(oracle::hull_basis_bruteforce(code, Form::Hermitian)?.rows() == 0),
        Prop::Mds => Some(oracle::mds_exhaustive(code, caps.subsets)?),
        Prop::Distance => Some(oracle::distance_exhaustive(code, caps.codewords)? == code.n() - code.k() + 1),
        Prop::So | Prop::Hso | Prop::Sd => {
            let form = if prop == Prop::Hso { Form::Hermitian } else { Form::Euclidean };
            let hull = oracle::hull_basis_bruteforce(code, form)?.rows();
            let so = hull == code.k();
            Some(if prop == Prop::Sd { so && 2 * code.k() == code.n() } else { so })
        }
    })
}

pub fn cmd_verify(file: &Path, props: &[Prop], use_oracle: bool) -> Result<(String, i32)> {
    let cf = read_code_file(file)?;
    let code = &cf.code;
    let mut s = String::new();
    let _ = writeln!(s, "code [{},{}] over {}", code.n(), code.k(), code.field());
    let mut all = true;
    for &prop in props {
        let (holds, detail) = check_prop(code, prop)?;
        all &= holds;
        let _ = write!(s, "{} {}", prop.name(), if holds { "holds" } else { "fails" });
        if !detail.is_empty() {
            let _ = write!(s, " ({detail})");
        }
        if use_oracle {
            if let Some(o) = oracle_prop(code, prop)? {
                if o == holds {
                    let _ = write!(s, " [oracle agrees]");
                } else {
                    all = false;
                    let _ = write!(s, " [ORACLE_MISMATCH: oracle says {o}]");
                }
            }
        }
        s.push('\n');
    }
    Ok((s, if all { EXIT_OK } else { EXIT_PROPERTY_FAILS }))
}

pub fn cmd_distance(file: &Path, cap: Option<u64>) -> Result<String> {
    let cf = read_code_file(file)?;
    let cap = cap.unwrap_or(Caps::global().codewords);
    Ok(format!("{}\n", cf.code.min_distance(cap)?.d))
}

/// `(n, k)` cells of the table, in output order.
pub fn table_cells(field: &FieldSpec, form: Form) -> Vec<(usize, usize)> {
    let q = field.q() as usize;
    let mut cells: Vec<(usize, usize)> = (1..=q + 1).flat_map(|n| (0..=n).map(move |k| (n, k))).collect();
    if form == Form::Euclidean && field.p() == 2 {
        for k in [q - 1, 3] {
            if k <= q + 2 && !cells.contains(&(q + 2, k)) {
                cells.push((q + 2, k));
            }
        }
        cells.sort_unstable();
    }
    cells
}

fn table_row(field: &FieldSpec, form: Form, n: usize, k: usize) -> String {
    let caps = Caps::global();
    match lcd_mds(field, n, k, form) {
        Ok(r) => {
            let q = field.q() as u128;
            let projective = if k == 0 { 0 } else { (crate::caps::saturating_pow(q as u64, k) - 1) / (q - 1) };
            let d = if projective <= caps.table_distance as u128 {
                match r.code.min_distance(caps.table_distance) {
                    Ok(d) => d.d.to_string(),
                    Err(_) => "-".into(),
                }
            } else {
                "-".into()
            };
            format!("{n} {k} OK {d} {}", r.provenance)
        }
        Err(e @ Error::CapExceeded { .. }) => format!("# {n} {k} skipped: {e}"),
        Err(e) => {
            let msg = e.to_string();
            let (tag, rest) = msg.split_once(": ").unwrap_or((msg.as_str(), ""));
            format!("{n} {k} {tag} - {rest}")
        }
    }
}

/// One line per `(n, k)`; output is independent of `jobs`.
pub fn cmd_table(q: u64, form: Form, jobs: usize) -> Result<String> {
    let field = field_for_order(q)?;
    if form == Form::Hermitian {
        field.subfield_order()?;
    }
    let cells = table_cells(&field, form);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let rows: Vec<String> = pool.install(|| cells.par_iter().map(|&(n, k)| table_row(&field, form, n, k)).collect());
    let mut s = String::new();
    let _ = writeln!(s, "# lcdmds table q={q} form={form}");
    let _ = writeln!(s, "# n k status d provenance");
    for r in rows {
        s.push_str(&r);
        s.push('\n');
    }
    Ok(s)
}

fn cmd_table_to(q: u64, form: Form, jobs: usize, out: Option<&Path>) -> Result<(String, i32)> {
    let text = cmd_table(q, form, jobs)?;
    match out {
        Some(path) => {
            write_file(path, &text)?;
            Ok((String::new(), EXIT_OK))
        }
        None => Ok((text, EXIT_OK)),
    }
}
