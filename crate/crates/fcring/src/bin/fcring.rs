//! Command-line interface for fusion ring structure analysis.

use std::path::Path;
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};

use fcring::center::CenterGroup;
use fcring::chars::Config;
use fcring::error::Error;
use fcring::fcset::{ClassPartition, FcSet};
use fcring::model::{parse_model, ModelFile};
use fcring::report::{fmt_c64, fmt_f64, Record};
use fcring::ring::{verlinde_consistency, FusionRing};
use fcring::set::PrimarySet;
use fcring::{check_modularity, zoo};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "fcring",
    about = "Structure analysis for rational fusion rings",
    disable_help_subcommand = true
)]
struct Cli {
    /// Floating-point tolerance for equality tests.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    /// Seed for the randomized diagonalization.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Output format; machine output is line-oriented and byte-stable.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Suppress informational output.
    #[arg(long, global = true, action = ArgAction::SetTrue)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a model file against the ring axioms.
    Validate { model: String },
    /// List every fusion-closed set with its dual and flags.
    Fcsets { model: String },
    /// Print the covering relation of the lattice of fusion-closed sets.
    Lattice {
        model: String,
        /// Exhaustively test the modular law and report lattice properties.
        #[arg(long, action = ArgAction::SetTrue)]
        check_modular: bool,
    },
    /// Class partition, characters, extents and orthogonality residuals.
    Classes {
        model: String,
        /// Comma-separated primary indices; the closure is taken.
        #[arg(long)]
        fcset: String,
    },
    /// Block partition of a fusion-closed set.
    Blocks {
        model: String,
        #[arg(long)]
        fcset: String,
    },
    /// Integer overlap matrix between blocks and classes.
    Overlaps {
        model: String,
        #[arg(long)]
        fcset: String,
    },
    /// Central classes, group structure and class action.
    Center {
        model: String,
        #[arg(long)]
        fcset: String,
    },
    /// Central quotient by the subgroup generated by the given classes.
    Quotient {
        model: String,
        #[arg(long)]
        fcset: String,
        /// Comma-separated class indices generating a central subgroup.
        #[arg(long)]
        subgroup: String,
    },
    /// All extensions by the abelian group with the given cyclic orders.
    Extend {
        model: String,
        #[arg(long)]
        fcset: String,
        /// Comma-separated cyclic orders, e.g. "2,2".
        #[arg(long)]
        group: String,
    },
    /// Locality profile of every fusion-closed set.
    Local { model: String },
    /// Witnesses for each divisor of the trivial extent of a nilpotent set.
    Divisors {
        model: String,
        #[arg(long)]
        fcset: String,
    },
    /// Character-ring property checks over all integral fusion-closed sets.
    Verify { model: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                eprint!("{e}");
                eprintln!("error kind=Usage code=1 msg=\"invalid command line\"");
                return ExitCode::from(1);
            }
            // help or version request
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let code = e.exit_code() as u8;
            eprintln!("error kind={} code={} msg=\"{}\"", e.kind(), code, e);
            ExitCode::from(code)
        }
    }
}

struct Ctx {
    format: Format,
    quiet: bool,
}

impl Ctx {
    fn machine(&self) -> bool {
        self.format == Format::Machine
    }

    fn say(&self, text: impl AsRef<str>) {
        if !self.quiet {
            write_line(text.as_ref());
        }
    }

    fn emit(&self, line: String) {
        write_line(&line);
    }
}

/// Writes one line to stdout, exiting quietly when the reader is gone.
fn write_line(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").is_err() {
        std::process::exit(0);
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let cfg = Config {
        tolerance: cli.tolerance,
        seed: cli.seed,
        max_attempts: 12,
    };
    let ctx = Ctx {
        format: cli.format,
        quiet: cli.quiet,
    };
    match &cli.command {
        Command::Validate { model } => {
            let (file, ring) = load(model, &cfg)?;
            cmd_validate(&ctx, &file, &ring)
        }
        Command::Fcsets { model } => {
            let (_, ring) = load(model, &cfg)?;
            cmd_fcsets(&ctx, &ring)
        }
        Command::Lattice {
            model,
            check_modular,
        } => {
            let (_, ring) = load(model, &cfg)?;
            cmd_lattice(&ctx, &ring, *check_modular)
        }
        Command::Classes { model, fcset } => {
            let (_, ring) = load(model, &cfg)?;
            let g = resolve_fcset(&ctx, &ring, fcset)?;
            cmd_classes(&ctx, &ring, &g)
        }
        Command::Blocks { model, fcset } => {
            let (_, ring) = load(model, &cfg)?;
            let g = resolve_fcset(&ctx, &ring, fcset)?;
            cmd_blocks(&ctx, &ring, &g)
        }
        Command::Overlaps { model, fcset } => {
            let (_, ring) = load(model, &cfg)?;
            let g = resolve_fcset(&ctx, &ring, fcset)?;
            cmd_overlaps(&ctx, &ring, &g)
        }
        Command::Center { model, fcset } => {
            let (_, ring) = load(model, &cfg)?;
            let g = resolve_fcset(&ctx, &ring, fcset)?;
            cmd_center(&ctx, &ring, &g)
        }
        Command::Quotient {
            model,
            fcset,
            subgroup,
        } => {
            let (_, ring) = load(model, &cfg)?;
            let g = resolve_fcset(&ctx, &ring, fcset)?;
            cmd_quotient(&ctx, &ring, &g, subgroup)
        }
        Command::Extend {
            model,
            fcset,
            group,
        } => {
            let (_, ring) = load(model, &cfg)?;
            let g = resolve_fcset(&ctx, &ring, fcset)?;
            cmd_extend(&ctx, &ring, &g, group)
        }
        Command::Local { model } => {
            let (_, ring) = load(model, &cfg)?;
            cmd_local(&ctx, &ring)
        }
        Command::Divisors { model, fcset } => {
            let (_, ring) = load(model, &cfg)?;
            let g = resolve_fcset(&ctx, &ring, fcset)?;
            cmd_divisors(&ctx, &ring, &g)
        }
        Command::Verify { model } => {
            let (_, ring) = load(model, &cfg)?;
            cmd_verify(&ctx, &ring)
        }
    }
}

/// Model arguments name either a file on disk or a bundled model.
fn load(arg: &str, cfg: &Config) -> Result<(ModelFile, FusionRing), Error> {
    let file = if Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg)?;
        parse_model(&text)?
    } else {
        zoo::bundled_model(arg)?
    };
    let ring = FusionRing::validate(file.to_raw(), cfg)?;
    Ok((file, ring))
}

fn parse_index_list(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Precondition(format!("{s:?} is not an index")))
        })
        .collect()
}

fn resolve_fcset(ctx: &Ctx, ring: &FusionRing, spec: &str) -> Result<FcSet, Error> {
    let indices = parse_index_list(spec)?;
    for &p in &indices {
        if p >= ring.primary_count() {
            return Err(Error::Precondition(format!(
                "primary {p} out of range for n = {}",
                ring.primary_count()
            )));
        }
    }
    let seed = PrimarySet::from_members(indices.iter().copied());
    let g = ring.closure(seed);
    if g.members() != seed {
        if ctx.machine() {
            ctx.emit(
                Record::new("closure")
                    .field("input", seed.members_string())
                    .field("closed", g.members_string())
                    .finish(),
            );
        } else {
            ctx.say(format!(
                "note: closure enlarged {{{}}} to {{{}}}",
                seed.members_string(),
                g.members_string()
            ));
        }
    }
    Ok(g)
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn opt_flag(b: Option<bool>) -> String {
    match b {
        None => "-".into(),
        Some(x) => flag(x).into(),
    }
}

fn cmd_validate(ctx: &Ctx, file: &ModelFile, ring: &FusionRing) -> Result<u8, Error> {
    if ctx.machine() {
        ctx.emit(
            Record::new("ring")
                .field("model", &file.name)
                .field("n", ring.primary_count().to_string())
                .field("total_dim_sq", fmt_f64(ring.total_dim_sq()))
                .field("modular_compatible", flag(ring.modular_compatible()))
                .field("smatrix", flag(ring.smatrix().is_some()))
                .field("weights", flag(ring.weights().is_some()))
                .field("warnings", ring.warnings().len().to_string())
                .finish(),
        );
        for p in 0..ring.primary_count() {
            ctx.emit(
                Record::new("dim")
                    .field("p", p.to_string())
                    .field("label", ring.label(p))
                    .field("d", fmt_f64(ring.dim(p)))
                    .field("conj", ring.conjugate(p).to_string())
                    .finish(),
            );
        }
        let table = ring.characters();
        for (order, &p) in table.canonical_order().iter().enumerate() {
            let values: Vec<String> = table.row(p).iter().map(|z| fmt_c64(*z)).collect();
            ctx.emit(
                Record::new("char_row")
                    .field("order", order.to_string())
                    .field("p", p.to_string())
                    .field("values", values.join(";"))
                    .finish(),
            );
        }
    } else {
        ctx.say(format!(
            "{}: valid fusion ring with {} primaries",
            file.name,
            ring.primary_count()
        ));
        ctx.say(format!(
            "  total quantum dimension squared: {}",
            fmt_f64(ring.total_dim_sq())
        ));
        ctx.say(format!(
            "  modular compatible: {}",
            ring.modular_compatible()
        ));
        for p in 0..ring.primary_count() {
            ctx.say(format!(
                "  {:>3} {:<8} d = {}  conj = {}",
                p,
                ring.label(p),
                fmt_f64(ring.dim(p)),
                ring.conjugate(p)
            ));
        }
        ctx.say("  global characters (dimension row first):");
        let table = ring.characters();
        for &p in table.canonical_order() {
            let values: Vec<String> = table
                .row(p)
                .iter()
                .map(|z| format!("{:>12}", fmt_c64(*z)))
                .collect();
            ctx.say(format!("    rho[{p}] {}", values.join(" ")));
        }
        if ring.smatrix().is_some() {
            let report = verlinde_consistency(ring)?;
            ctx.say(format!(
                "  S-matrix present; fusion-rule deviation {:.3e}",
                report.max_deviation
            ));
        }
        for w in ring.warnings() {
            ctx.say(format!("  warning: {w}"));
        }
    }
    Ok(0)
}

fn cmd_fcsets(ctx: &Ctx, ring: &FusionRing) -> Result<u8, Error> {
    let lat = ring.enumerate_fcsets()?;
    if !ctx.machine() {
        ctx.say(format!("{} fusion-closed sets", lat.len()));
        ctx.say("  id  members        size  dual           dual_extent  local  twister");
    }
    for i in 0..lat.len() {
        let g = ring.fcset(lat.element(i))?;
        let parts = ring.classes(&g)?;
        let dual = ring.dual(&g)?;
        let local = ring.is_local(&g)?;
        let twister = match ring.weights() {
            None => None,
            Some(_) => Some(local && ring.is_twister(&g)?),
        };
        let dual_extent = parts.extents[parts.trivial_class];
        if ctx.machine() {
            ctx.emit(
                Record::new("fcset")
                    .field("id", i.to_string())
                    .field("members", g.members_string())
                    .field("size", g.len().to_string())
                    .field("dual", dual.members_string())
                    .field("dual_extent", fmt_f64(dual_extent))
                    .field("local", flag(local))
                    .field("twister", opt_flag(twister))
                    .finish(),
            );
        } else {
            ctx.say(format!(
                "  {:>2}  {:<13} {:>4}  {:<13} {:>11}  {:<5}  {}",
                i,
                g.members_string(),
                g.len(),
                dual.members_string(),
                fmt_f64(dual_extent),
                local,
                opt_flag(twister),
            ));
        }
    }
    Ok(0)
}

fn cmd_lattice(ctx: &Ctx, ring: &FusionRing, check_modular: bool) -> Result<u8, Error> {
    let lat = ring.enumerate_fcsets()?;
    if !ctx.machine() {
        ctx.say(format!(
            "lattice with {} elements, height {}",
            lat.len(),
            lat.height()
        ));
        for (i, e) in lat.elements().iter().enumerate() {
            ctx.say(format!("  {:>2}: {{{}}}", i, e.members_string()));
        }
        ctx.say("covers:");
    } else {
        for (i, e) in lat.elements().iter().enumerate() {
            ctx.emit(
                Record::new("element")
                    .field("id", i.to_string())
                    .field("members", e.members_string())
                    .finish(),
            );
        }
    }
    for (lower, upper) in lat.covers() {
        if ctx.machine() {
            ctx.emit(
                Record::new("cover")
                    .field("lower", lower.to_string())
                    .field("upper", upper.to_string())
                    .finish(),
            );
        } else {
            ctx.say(format!("  {lower} < {upper}"));
        }
    }
    if check_modular {
        let report = check_modularity(&lat);
        if ctx.machine() {
            ctx.emit(
                Record::new("lattice")
                    .field("elements", report.element_count.to_string())
                    .field("height", report.height.to_string())
                    .field("modular", flag(report.modular))
                    .field("distributive", flag(report.distributive))
                    .field("complemented", flag(report.complemented))
                    .field("violations", report.modular_violations.len().to_string())
                    .finish(),
            );
        } else {
            ctx.say(format!(
                "modular: {} (violations: {}); distributive: {}; complemented: {}",
                report.modular,
                report.modular_violations.len(),
                report.distributive,
                report.complemented
            ));
        }
        if !report.modular {
            return Ok(3);
        }
    }
    Ok(0)
}

fn cmd_classes(ctx: &Ctx, ring: &FusionRing, g: &FcSet) -> Result<u8, Error> {
    let parts = ring.classes(g)?;
    let ortho = ring.orthogonality_report(&parts);
    if ctx.machine() {
        for (c, class) in parts.classes.iter().enumerate() {
            ctx.emit(
                Record::new("class")
                    .field("id", c.to_string())
                    .field("members", class.members_string())
                    .field("extent", fmt_f64(parts.extents[c]))
                    .field("trivial", flag(c == parts.trivial_class))
                    .finish(),
            );
        }
        for (c, chi) in parts.chars.iter().enumerate() {
            for (i, &alpha) in parts.g_members.iter().enumerate() {
                ctx.emit(
                    Record::new("char")
                        .field("class", c.to_string())
                        .field("alpha", alpha.to_string())
                        .field("value", fmt_c64(chi[i]))
                        .finish(),
                );
            }
        }
        ctx.emit(
            Record::new("ortho")
                .field("row_residual", format!("{:e}", ortho.row_residual))
                .field("column_residual", format!("{:e}", ortho.column_residual))
                .finish(),
        );
    } else {
        ctx.say(format!(
            "classes of {{{}}} ({} classes)",
            g.members_string(),
            parts.class_count()
        ));
        for (c, class) in parts.classes.iter().enumerate() {
            let marker = if c == parts.trivial_class {
                "  (trivial class / dual)"
            } else {
                ""
            };
            ctx.say(format!(
                "  class {c}: {{{}}}  extent {}{marker}",
                class.members_string(),
                fmt_f64(parts.extents[c]),
            ));
        }
        ctx.say("character table (classes x members of g):");
        let header: Vec<String> = parts
            .g_members
            .iter()
            .map(|&a| format!("{:>12}", ring.label(a)))
            .collect();
        ctx.say(format!("  {:>8} {}", "", header.join(" ")));
        for (c, chi) in parts.chars.iter().enumerate() {
            let row: Vec<String> = chi.iter().map(|z| format!("{:>12}", fmt_c64(*z))).collect();
            ctx.say(format!("  class {c:>2} {}", row.join(" ")));
        }
        ctx.say(format!(
            "orthogonality residuals: rows {:.3e}, columns {:.3e}",
            ortho.row_residual, ortho.column_residual
        ));
    }
    Ok(0)
}

fn cmd_blocks(ctx: &Ctx, ring: &FusionRing, g: &FcSet) -> Result<u8, Error> {
    let blocks = ring.blocks(g)?;
    if ctx.machine() {
        for (b, block) in blocks.blocks.iter().enumerate() {
            ctx.emit(
                Record::new("block")
                    .field("id", b.to_string())
                    .field("members", block.members_string())
                    .field("size", block.len().to_string())
                    .finish(),
            );
        }
    } else {
        ctx.say(format!(
            "blocks of {{{}}} ({} blocks)",
            g.members_string(),
            blocks.block_count()
        ));
        for (b, block) in blocks.blocks.iter().enumerate() {
            ctx.say(format!("  block {b}: {{{}}}", block.members_string()));
        }
    }
    Ok(0)
}

fn cmd_overlaps(ctx: &Ctx, ring: &FusionRing, g: &FcSet) -> Result<u8, Error> {
    let parts = ring.classes(g)?;
    let blocks = ring.blocks(g)?;
    let matrix = ring.overlap_matrix(&parts, &blocks)?;
    if ctx.machine() {
        for (b, row) in matrix.entries.iter().enumerate() {
            for (c, &value) in row.iter().enumerate() {
                ctx.emit(
                    Record::new("overlap")
                        .field("block", b.to_string())
                        .field("class", c.to_string())
                        .field("value", value.to_string())
                        .field("szero", flag(value == 0))
                        .finish(),
                );
            }
        }
    } else {
        ctx.say(format!(
            "overlaps of {{{}}} (rows: blocks, columns: classes)",
            g.members_string()
        ));
        for (b, row) in matrix.entries.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            ctx.say(format!(
                "  block {b} {{{}}}: {}",
                blocks.blocks[b].members_string(),
                cells.join(" ")
            ));
        }
        let mut zeros = Vec::new();
        for (b, row) in matrix.entries.iter().enumerate() {
            for (c, &value) in row.iter().enumerate() {
                if value == 0 {
                    zeros.push(format!("({b},{c})"));
                }
            }
        }
        if !zeros.is_empty() {
            ctx.say(format!(
                "zero entries (vanishing S-matrix rectangles): {}",
                zeros.join(" ")
            ));
        }
    }
    Ok(0)
}

fn center_of(ring: &FusionRing, g: &FcSet) -> Result<(ClassPartition, CenterGroup), Error> {
    let parts = ring.classes(g)?;
    let center = ring.center(g, &parts)?;
    Ok((parts, center))
}

fn cmd_center(ctx: &Ctx, ring: &FusionRing, g: &FcSet) -> Result<u8, Error> {
    let (parts, center) = center_of(ring, g)?;
    let factors: Vec<String> = center
        .invariant_factors
        .iter()
        .map(|f| f.to_string())
        .collect();
    let factors = if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join(",")
    };
    if ctx.machine() {
        ctx.emit(
            Record::new("center")
                .field("size", center.order().to_string())
                .field("invariant_factors", &factors)
                .field("abelian", flag(ring.is_abelian(g, &parts, &center)?))
                .finish(),
        );
        for (pos, &class) in center.central_classes.iter().enumerate() {
            ctx.emit(
                Record::new("central")
                    .field("pos", pos.to_string())
                    .field("class", class.to_string())
                    .field("members", parts.classes[class].members_string())
                    .field("order", center.orders[pos].to_string())
                    .field("inverse", center.inv[pos].to_string())
                    .finish(),
            );
        }
        for (pos, row) in center.action.iter().enumerate() {
            for (c, image) in row.iter().enumerate() {
                ctx.emit(
                    Record::new("action")
                        .field("z", pos.to_string())
                        .field("class", c.to_string())
                        .field("image", image.to_string())
                        .finish(),
                );
            }
        }
    } else {
        ctx.say(format!(
            "center of {{{}}}: order {}, invariant factors [{}]",
            g.members_string(),
            center.order(),
            factors
        ));
        for (pos, &class) in center.central_classes.iter().enumerate() {
            ctx.say(format!(
                "  z{pos} = class {class} {{{}}}  order {}  inverse z{}",
                parts.classes[class].members_string(),
                center.orders[pos],
                center.inv[pos]
            ));
        }
        ctx.say("action on classes (rows: central, columns: class index):");
        for (pos, row) in center.action.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|i| format!("{i:>2}")).collect();
            ctx.say(format!("  z{pos}: {}", cells.join(" ")));
        }
    }
    Ok(0)
}

fn cmd_quotient(ctx: &Ctx, ring: &FusionRing, g: &FcSet, subgroup: &str) -> Result<u8, Error> {
    let (parts, center) = center_of(ring, g)?;
    let generators = parse_index_list(subgroup)?;
    let mut positions = Vec::new();
    for c in generators {
        let Some(pos) = center.central_position(c) else {
            return Err(Error::NotASubgroup {
                detail: format!("class {c} is not central"),
            });
        };
        positions.push(pos);
    }
    let mut subgroup: Vec<usize> = vec![center.identity];
    let mut frontier = vec![center.identity];
    while let Some(x) = frontier.pop() {
        for &gen in &positions {
            let y = center.mult[x][gen];
            if !subgroup.contains(&y) {
                subgroup.push(y);
                frontier.push(y);
            }
        }
    }
    subgroup.sort_unstable();
    let quotient = ring.central_quotient(g, &parts, &center, &subgroup)?;
    let dual = ring.dual(&quotient)?;
    let mut union = PrimarySet::EMPTY;
    for &pos in &subgroup {
        union = union.union(&parts.classes[center.central_classes[pos]]);
    }
    if ctx.machine() {
        ctx.emit(
            Record::new("quotient")
                .field("members", quotient.members_string())
                .field("dual", dual.members_string())
                .field("subgroup_union", union.members_string())
                .field("dual_matches_subgroup_union", flag(dual.members() == union))
                .finish(),
        );
    } else {
        ctx.say(format!(
            "quotient of {{{}}} by the subgroup of order {}: {{{}}}",
            g.members_string(),
            subgroup.len(),
            quotient.members_string()
        ));
        ctx.say(format!(
            "  dual of quotient: {{{}}}; union of subgroup classes: {{{}}} (match: {})",
            dual.members_string(),
            union.members_string(),
            dual.members() == union
        ));
    }
    Ok(0)
}

fn cmd_extend(ctx: &Ctx, ring: &FusionRing, g: &FcSet, group: &str) -> Result<u8, Error> {
    let orders: Vec<u64> = parse_index_list(group)?.iter().map(|&x| x as u64).collect();
    let extensions = ring.central_extensions(g, &orders)?;
    if ctx.machine() {
        for (i, ext) in extensions.iter().enumerate() {
            ctx.emit(
                Record::new("extension")
                    .field("id", i.to_string())
                    .field("members", ext.members_string())
                    .finish(),
            );
        }
    } else {
        ctx.say(format!(
            "{} extension(s) of {{{}}} by the group with cyclic orders {:?}",
            extensions.len(),
            g.members_string(),
            orders
        ));
        for ext in &extensions {
            ctx.say(format!("  {{{}}}", ext.members_string()));
        }
    }
    Ok(0)
}

fn props_fields(rec: Record, report: &fcring::local::PropertyReport) -> Record {
    let mut rec = rec;
    for (name, status) in report.statuses() {
        rec = rec.field(name, status.as_str());
    }
    rec
}

fn cmd_local(ctx: &Ctx, ring: &FusionRing) -> Result<u8, Error> {
    let lat = ring.enumerate_fcsets()?;
    if !ctx.machine() {
        ctx.say(format!(
            "locality profiles for {} fusion-closed sets",
            lat.len()
        ));
    }
    for i in 0..lat.len() {
        let g = ring.fcset(lat.element(i))?;
        let profile = ring.locality_profile(&g)?;
        let chain: Vec<String> = profile
            .nilpotency_chain
            .iter()
            .map(|s| s.members_string())
            .collect();
        let chain = chain.join("|");
        let ramond = profile
            .ramond_class
            .map(|c| c.to_string())
            .unwrap_or_else(|| "-".into());
        if ctx.machine() {
            let rec = Record::new("local")
                .field("id", i.to_string())
                .field("members", profile.members.members_string())
                .field("dual", profile.dual.members_string())
                .field("dual_extent", fmt_f64(profile.dual_extent))
                .field("local", flag(profile.is_local))
                .field("twister", opt_flag(profile.is_twister))
                .field("ramond_class", &ramond)
                .field("nilpotent", flag(profile.is_nilpotent))
                .field("chain", &chain)
                .field("integral", flag(profile.is_integral));
            ctx.emit(props_fields(rec, &profile.properties).finish());
        } else {
            let twister = opt_flag(profile.is_twister);
            ctx.say(format!(
                "  {{{}}}: local={} twister={} ramond={} nilpotent={} integral={}",
                profile.members.members_string(),
                profile.is_local,
                twister,
                ramond,
                profile.is_nilpotent,
                profile.is_integral,
            ));
            if profile.is_nilpotent && profile.nilpotency_chain.len() > 1 {
                ctx.say(format!("      chain: {chain}"));
            }
        }
    }
    Ok(0)
}

fn cmd_divisors(ctx: &Ctx, ring: &FusionRing, g: &FcSet) -> Result<u8, Error> {
    let (nilpotent, _) = ring.is_nilpotent(g)?;
    if !nilpotent {
        return Err(Error::Precondition(format!(
            "{{{}}} is not nilpotent",
            g.members_string()
        )));
    }
    let lat = ring.enumerate_fcsets()?;
    let report = ring.nilpotent_divisor_scan(g, &lat)?;
    if !ctx.machine() {
        ctx.say(format!(
            "trivial extent of {{{}}} is {}; contained sets realizing each divisor:",
            g.members_string(),
            report.trivial_extent
        ));
    }
    for (d, witness) in &report.witnesses {
        let witness_text = witness
            .map(|w| w.members_string())
            .unwrap_or_else(|| "-".into());
        if ctx.machine() {
            ctx.emit(
                Record::new("divisor")
                    .field("value", d.to_string())
                    .field("witness", &witness_text)
                    .finish(),
            );
        } else {
            ctx.say(format!("  {d}: {{{witness_text}}}"));
        }
    }
    Ok(0)
}

fn cmd_verify(ctx: &Ctx, ring: &FusionRing) -> Result<u8, Error> {
    let lat = ring.enumerate_fcsets()?;
    let mut integral_sets = 0usize;
    let mut hard_failures = 0usize;
    for i in 0..lat.len() {
        let g = ring.fcset(lat.element(i))?;
        let report = ring.verify_character_properties(&g)?;
        if report.integral {
            integral_sets += 1;
        }
        if report.hard_failure() {
            hard_failures += 1;
        }
        if ctx.machine() {
            let rec = Record::new("verify")
                .field("id", i.to_string())
                .field("members", g.members_string())
                .field("integral", flag(report.integral));
            ctx.emit(props_fields(rec, &report).finish());
        } else {
            let statuses: Vec<String> = report
                .statuses()
                .iter()
                .map(|(name, s)| format!("{name}={}", s.as_str()))
                .collect();
            ctx.say(format!(
                "  {{{}}} integral={} {}",
                g.members_string(),
                report.integral,
                statuses.join(" ")
            ));
            for note in &report.notes {
                ctx.say(format!("      note: {note}"));
            }
        }
    }
    if ctx.machine() {
        ctx.emit(
            Record::new("summary")
                .field("sets", lat.len().to_string())
                .field("integral_sets", integral_sets.to_string())
                .field("hard_failures", hard_failures.to_string())
                .finish(),
        );
    } else {
        ctx.say(format!(
            "{} sets, {} integral, {} hard failures",
            lat.len(),
            integral_sets,
            hard_failures
        ));
    }
    Ok(if hard_failures == 0 { 0 } else { 3 })
}
