//! `evenhom`: homology, cup and Pontryagin products of even Artin and Coxeter
//! groups from a Coxeter matrix.

mod output;
mod verify;

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use evenhom_core::finite_oracle::bar::{bar_h_capped, DEFAULT_MAX_ORDER_H2};
use evenhom_core::finite_oracle::{
    cyclic, dihedral, direct_product_capped, elementary_abelian, todd_coxeter, GroupTable,
    DEFAULT_MAX_COSETS,
};
use evenhom_core::words::DEFAULT_MAX_LEMMA_K;
use evenhom_core::{
    class_of, coords_via_wedge, cox_h1, cox_h2, cox_pontryagin, cup_table, flatten, h1, h2,
    parse_matrix, pontryagin_artin, pontryagin_chain, rho_star, rho_star_matrix, CoxeterMatrix,
    Error, ErrorKind, EvenPresentation, Label, RelatorProduct, Word,
};
use output::{group_json, pair_json, Emitter, Format};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "evenhom", version, about = "Low-degree homology of even Artin and Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    cfg: RunConfig,
}

#[derive(Debug, Args)]
pub struct RunConfig {
    /// Matrix file ("-" for stdin). Read from stdin when neither this nor --matrix is given.
    #[arg(long, global = true, conflicts_with = "matrix")]
    input: Option<PathBuf>,

    /// Inline matrix document; `;` separates lines, e.g. "n=2; 1 2 4".
    #[arg(long, global = true)]
    matrix: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COSETS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    max_cosets: u64,

    /// Largest group order for bar-complex H_2.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER_H2 as u64, value_parser = clap::value_parser!(u64).range(1..))]
    max_order: u64,

    /// Largest k for the w_k words checked by `verify`.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_LEMMA_K, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_k: u32,
}

impl RunConfig {
    pub fn max_cosets(&self) -> usize {
        usize::try_from(self.max_cosets).unwrap_or(usize::MAX)
    }

    pub fn max_order(&self) -> usize {
        usize::try_from(self.max_order).unwrap_or(usize::MAX)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupKind {
    Artin,
    Coxeter,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a matrix, printing its canonical form.
    Validate,
    /// First homology with a basis.
    H1 {
        #[arg(long, value_enum, default_value_t = GroupKind::Artin)]
        group: GroupKind,
    },
    /// Second homology with a basis of representative words.
    H2 {
        #[arg(long, value_enum, default_value_t = GroupKind::Artin)]
        group: GroupKind,
    },
    /// Cup products of degree-one classes of the Artin group.
    Cup,
    /// Commuting pairs whose Pontryagin products form a basis of H_2.
    Pontryagin {
        #[arg(long, value_enum, default_value_t = GroupKind::Artin)]
        group: GroupKind,
    },
    /// Coordinates of a relator product, cross-checked through the Magnus expansion.
    Class {
        /// Relator-product file: lines "pair=(i,j) exp=±1 conj=<word>".
        file: PathBuf,
    },
    /// Run every consistency check on the matrix.
    Verify,
    /// H_1 and H_2 of a finite group from the bar complex.
    OracleH2 {
        /// Constructed group, e.g. "dihedral:2", "elementary:3", "cyclic:4",
        /// or a product "dihedral:2*elementary:1".
        #[arg(long, conflicts_with = "table")]
        construct: Option<String>,
        /// Group table file. Without this or --construct the Coxeter group
        /// of the matrix is enumerated.
        #[arg(long)]
        table: Option<PathBuf>,
    },
}

/// Failures of the front end, mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    ChecksFailed(usize),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind().as_str(),
            CliError::Io(_) => ErrorKind::Input.as_str(),
            CliError::ChecksFailed(_) => ErrorKind::Mathematical.as_str(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Mathematical => 1,
                ErrorKind::Input => 2,
                ErrorKind::Resource => 3,
            },
            CliError::Io(_) => 2,
            CliError::ChecksFailed(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io(m) => m.clone(),
            CliError::ChecksFailed(n) => format!("{n} check(s) failed"),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn read_source(path: &PathBuf) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))
    }
}

fn load_matrix(cfg: &RunConfig) -> CliResult<CoxeterMatrix> {
    let text = match (&cfg.matrix, &cfg.input) {
        (Some(m), _) => m.clone(),
        (None, Some(path)) => read_source(path)?,
        (None, None) => read_source(&PathBuf::from("-"))?,
    };
    Ok(parse_matrix(&text)?)
}

fn load_presentation(cfg: &RunConfig) -> CliResult<EvenPresentation> {
    Ok(load_matrix(cfg)?.to_even()?)
}

fn label_json(m: &CoxeterMatrix) -> serde_json::Value {
    let mut labels = Vec::new();
    for i in 1..=m.n() {
        for j in i + 1..=m.n() {
            if let Label::Finite(v) = m.label(i, j) {
                labels.push(json!({"i": i, "j": j, "m": v}));
            }
        }
    }
    json!(labels)
}

fn validate(cfg: &RunConfig, out: &mut Emitter) -> CliResult {
    let m = load_matrix(cfg)?;
    let p = m.to_even()?;
    let pairs: Vec<_> = p.pairs().iter().map(|&q| pair_json(q)).collect();
    let text = format!(
        "valid even Coxeter matrix: n = {}, |B| = {}\n{}",
        m.n(),
        p.pairs().len(),
        m.to_text()
    );
    out.record(
        "matrix",
        json!({"n": m.n(), "labels": label_json(&m), "B": pairs, "right_angled": p.is_right_angled()}),
        text,
    );
    Ok(())
}

fn homology_h1(cfg: &RunConfig, group: GroupKind, out: &mut Emitter) -> CliResult {
    let p = load_presentation(cfg)?;
    let (prefix, name) = match group {
        GroupKind::Artin => ("a", "artin"),
        GroupKind::Coxeter => ("s", "coxeter"),
    };
    let gens: Vec<String> = (1..=p.n()).map(|i| format!("{prefix}{i}")).collect();
    let invariants = match group {
        GroupKind::Artin => {
            let b = h1(&p);
            evenhom_core::AbelianGroup {
                free_rank: b.rank,
                torsion: Vec::new(),
            }
        }
        GroupKind::Coxeter => cox_h1(&p)?,
    };
    let text = format!("H1 = {invariants}\nbasis: {}", gens.join(" "));
    out.record(
        "h1",
        json!({"group": name, "rank": gens.len(), "invariants": group_json(&invariants), "basis": gens}),
        text,
    );
    Ok(())
}

fn homology_h2(cfg: &RunConfig, group: GroupKind, out: &mut Emitter) -> CliResult {
    let p = load_presentation(cfg)?;
    let (basis, prefix, name, coeff) = match group {
        GroupKind::Artin => (h2(&p), "a", "artin", "Z"),
        GroupKind::Coxeter => (cox_h2(&p), "s", "coxeter", "Z/2"),
    };
    let mut lines = vec![match basis.rank() {
        0 => "H2 = 0".to_string(),
        1 => format!("H2 = {coeff}"),
        r => format!("H2 = ({coeff})^{r}"),
    }];
    let mut elems = Vec::new();
    for g in &basis.generators {
        let rep = g.representative(prefix);
        lines.push(format!("{} n={} {rep}", g.pair, g.half_label));
        elems.push(json!({
            "pair": pair_json(g.pair),
            "half_label": g.half_label,
            "representative": rep,
            "word": g.word().display_with(prefix).to_string(),
        }));
    }
    let mut fields = json!({"group": name, "rank": basis.rank(), "coefficients": coeff, "basis": elems});
    if group == GroupKind::Coxeter {
        let rho = rho_star_matrix(&p);
        if !rho.is_empty() {
            lines.push("rho* (mod 2):".into());
            for row in &rho {
                lines.push(row.iter().map(u8::to_string).collect::<Vec<_>>().join(" "));
            }
        }
        fields["rho_star"] = json!(rho);
    }
    out.record("h2", fields, lines.join("\n"));
    Ok(())
}

fn cup(cfg: &RunConfig, out: &mut Emitter) -> CliResult {
    let p = load_presentation(cfg)?;
    let table = cup_table(&p)?;
    match out.format() {
        Format::Text => out.record("", json!({}), format!("beta_i cup beta_j = c * beta_ij; c for row i, column j:\n{table}")),
        Format::JsonLines => {
            for (pair, coeff) in table.entries() {
                let basis = p.pair_index(pair).map(|_| pair_json(pair));
                out.record("cup", json!({"i": pair.i, "j": pair.j, "coeff": coeff, "basis_pair": basis}), "");
            }
        }
    }
    Ok(())
}

/// The Coxeter group of `p` as a table, within the coset cap.
fn enumerate(p: &EvenPresentation, cfg: &RunConfig) -> Result<GroupTable, Error> {
    todd_coxeter(p, cfg.max_cosets())
}

fn element_name(words: &[Word], x: usize) -> String {
    words[x].display_with("s").to_string()
}

fn pontryagin(cfg: &RunConfig, group: GroupKind, out: &mut Emitter) -> CliResult {
    let p = load_presentation(cfg)?;
    // For Coxeter groups, chains are shown in an enumerated table when possible.
    let table = match group {
        GroupKind::Coxeter if !p.has_infinite_label() => enumerate(&p, cfg).ok(),
        _ => None,
    };
    let words = table.as_ref().and_then(GroupTable::normal_words);
    for pair in p.pairs() {
        let (x, y, class, prefix, name) = match group {
            GroupKind::Artin => {
                let ((x, y), c) = pontryagin_artin(pair.i, pair.j, &p)?;
                (x, y, c.coords().to_vec(), "a", "artin")
            }
            GroupKind::Coxeter => {
                let ((x, y), c) = cox_pontryagin(pair.i, pair.j, &p)?;
                let coords = c.coords().into_iter().map(i64::from).collect();
                (x, y, coords, "s", "coxeter")
            }
        };
        let (xs, ys) = (x.display_with(prefix).to_string(), y.display_with(prefix).to_string());
        let mut chain = format!("[{xs}|{ys}] - [{ys}|{xs}]");
        if let (Some(g), Some(words)) = (&table, &words) {
            let (a, b) = (g.eval(&x)?, g.eval(&y)?);
            chain = pontryagin_chain(g, &a, &b)?.format_with(|&e| element_name(words, e));
        }
        let text = format!("{} <{xs}, {ys}> = {chain}", pair);
        out.record(
            "pontryagin",
            json!({"group": name, "pair": pair_json(*pair), "first": xs, "second": ys, "class": class, "chain": chain}),
            text,
        );
    }
    if p.pairs().is_empty() {
        out.record("pontryagin", json!({"pairs": 0}), "B is empty: H2 = 0");
    }
    Ok(())
}

fn class(cfg: &RunConfig, file: &PathBuf, out: &mut Emitter) -> CliResult {
    let p = load_presentation(cfg)?;
    let rp = RelatorProduct::parse(&read_source(file)?)?;
    rp.validate(&p)?;
    let direct = class_of(&rp, &p)?;
    let word = flatten(&rp, &p)?;
    let via = coords_via_wedge(&word, &p)?;
    let agree = direct == via;
    let pairs: Vec<_> = p.pairs().iter().map(|&q| pair_json(q)).collect();
    let rho = rho_star(&direct);
    let text = format!(
        "factors: {}\nclass: {direct} over B = [{}]\nMagnus cross-check: {via} ({})\nimage in H2(W): {rho}",
        rp.factors().len(),
        p.pairs().iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
        if agree { "agrees" } else { "DISAGREES" },
    );
    out.record(
        "class",
        json!({
            "B": pairs,
            "factors": rp.factors().len(),
            "coords": direct.coords(),
            "magnus_coords": via.coords(),
            "agree": agree,
            "rho_star": rho.coords(),
            "word_length": word.len(),
        }),
        text,
    );
    if agree {
        Ok(())
    } else {
        Err(CliError::ChecksFailed(1))
    }
}

fn parse_construct(spec: &str, max_order: usize) -> CliResult<GroupTable> {
    let bad = |m: String| CliError::Core(Error::InvalidArgument(m));
    let mut acc: Option<GroupTable> = None;
    for part in spec.split('*') {
        let (name, k) = part
            .trim()
            .split_once(':')
            .ok_or_else(|| bad(format!("expected name:k in {part:?}")))?;
        let k: usize = k.trim().parse().map_err(|_| bad(format!("bad parameter in {part:?}")))?;
        let g = match name.trim() {
            "dihedral" => dihedral(k)?,
            "elementary" => elementary_abelian(k)?,
            "cyclic" => cyclic(k)?,
            other => return Err(bad(format!("unknown group {other:?}"))),
        };
        acc = Some(match acc {
            None => g,
            Some(h) => direct_product_capped(&h, &g, max_order.max(64))?,
        });
    }
    acc.ok_or_else(|| bad("empty group description".into()))
}

fn oracle_h2(cfg: &RunConfig, construct: Option<&str>, table: Option<&PathBuf>, out: &mut Emitter) -> CliResult {
    let (g, source) = match (construct, table) {
        (Some(spec), _) => (parse_construct(spec, cfg.max_order())?, spec.to_string()),
        (None, Some(path)) => (GroupTable::from_text(&read_source(path)?)?, path.display().to_string()),
        (None, None) => {
            let p = load_presentation(cfg)?;
            (enumerate(&p, cfg)?, "enumerated".to_string())
        }
    };
    let h1 = bar_h_capped(&g, 1, cfg.max_order().max(64))?;
    let h2 = bar_h_capped(&g, 2, cfg.max_order())?;
    let text = format!("group: {source} (order {})\nH1 = {h1}\nH2 = {h2}", g.order());
    out.record(
        "oracle_h2",
        json!({"source": source, "order": g.order(), "h1": group_json(&h1), "h2": group_json(&h2)}),
        text,
    );
    Ok(())
}

fn run(cli: &Cli, out: &mut Emitter) -> CliResult {
    let cfg = &cli.cfg;
    match &cli.command {
        Command::Validate => validate(cfg, out),
        Command::H1 { group } => homology_h1(cfg, *group, out),
        Command::H2 { group } => homology_h2(cfg, *group, out),
        Command::Cup => cup(cfg, out),
        Command::Pontryagin { group } => pontryagin(cfg, *group, out),
        Command::Class { file } => class(cfg, file, out),
        Command::Verify => verify::run(cfg, &load_presentation(cfg)?, out),
        Command::OracleH2 { construct, table } => oracle_h2(cfg, construct.as_deref(), table.as_ref(), out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Emitter::new(cli.cfg.format);
    match run(&cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match cli.cfg.format {
                Format::Text => eprintln!("error ({}): {}", e.kind(), e.message()),
                Format::JsonLines => out.record("error", json!({"kind": e.kind(), "message": e.message(), "exit_code": e.exit_code()}), ""),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
