use clap::{Parser, Subcommand, ValueEnum};
use ramsplit::elliptic::{
    all_singular_fibers, gamma_vector, height_pairing, intersection_with_o, FiberType, SectionPoint, WeierstrassModel,
};
use ramsplit::error::{Error, Result};
use ramsplit::io::{load_surface, place_label, run_checks, SurfaceFile, SurfaceModel, VerificationReport};
use ramsplit::models::{to_ramified_with_record, to_split, SplitQuarticModel};
use ramsplit::quartic::{theorem_check, PlaneQuartic};
use ramsplit::quotient_tables::{branch_singularity, sigma_action};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ramsplit", version, about = "Ramified and split models of elliptic surfaces")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Split,
    Ramified,
}

#[derive(Subcommand)]
enum Command {
    /// Convert between the ramified and the split model.
    Transform {
        #[arg(long)]
        point: Option<String>,
        #[arg(long, value_enum)]
        to: Target,
        file: PathBuf,
    },
    /// List singular fibers.
    Fibers { file: PathBuf },
    /// Component indices of a section on each reducible fiber.
    Gamma {
        #[arg(long)]
        point: String,
        file: PathBuf,
    },
    /// Height pairing of a section with itself.
    Height {
        #[arg(long)]
        point: String,
        file: PathBuf,
    },
    /// Branch quartic analysis.
    Quartic {
        #[command(subcommand)]
        command: QuarticCommand,
    },
    /// Involution and branch-singularity tables.
    Tables {
        #[command(subcommand)]
        command: TableCommand,
    },
    /// Run every expectation in the given files or directories.
    Verify {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum QuarticCommand {
    /// Singular points, bitangent profile and the bound check.
    Analyze {
        #[arg(long)]
        point: Option<String>,
        file: PathBuf,
    },
    /// Non-transversal lines through the center.
    Lines {
        #[arg(long)]
        point: Option<String>,
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum TableCommand {
    Sigma {
        #[arg(long = "type")]
        fiber_type: String,
        #[arg(long)]
        component: String,
    },
    Branch {
        #[arg(long = "type")]
        fiber_type: String,
        #[arg(long)]
        component: String,
    },
}

struct Out {
    format: Format,
}

impl Out {
    fn emit(&self, human: String, machine: serde_json::Value) {
        match self.format {
            Format::Human => println!("{human}"),
            Format::Machine => println!("{machine}"),
        }
    }
}

fn ramified(sf: &SurfaceFile) -> WeierstrassModel {
    match &sf.model {
        SurfaceModel::Ramified(e) => e.clone(),
        SurfaceModel::Split(q) => to_ramified_with_record(q).0,
    }
}

fn section(sf: &SurfaceFile, name: &str) -> Result<SectionPoint> {
    match &sf.model {
        SurfaceModel::Split(q) if name == "P" => Ok(to_ramified_with_record(q).1.point),
        _ => Ok(sf.point(name)?.point.clone()),
    }
}

fn split_model(sf: &SurfaceFile, point: Option<&str>) -> Result<SplitQuarticModel> {
    match (&sf.model, point) {
        (SurfaceModel::Split(q), None) => Ok(q.clone()),
        (_, Some(name)) => Ok(to_split(&ramified(sf), &section(sf, name)?)?.0),
        (SurfaceModel::Ramified(_), None) => Err(Error::Inconsistent("a ramified file needs --point".into())),
    }
}

fn quartic_of(sf: &SurfaceFile, point: Option<&str>) -> Result<PlaneQuartic> {
    PlaneQuartic::from_split(&split_model(sf, point)?)
}

/// Surface files in a directory, sorted by name.
fn expand(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = vec![];
    for p in paths {
        if p.is_dir() {
            let mut files: Vec<PathBuf> = std::fs::read_dir(p)
                .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?
                .filter_map(|d| d.ok().map(|d| d.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "surface"))
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn verify_one(path: &Path) -> VerificationReport {
    match load_surface(path) {
        Ok(sf) => run_checks(&sf),
        Err(e) => {
            let mut r = VerificationReport::new(path.display().to_string());
            r.push("load", path.display().to_string(), "valid surface file", format!("error: {e}"), false);
            r
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let out = Out { format: cli.format };
    match cli.command {
        Command::Transform { point, to, file } => {
            let sf = load_surface(&file)?;
            match to {
                Target::Split => {
                    let name = point.ok_or_else(|| Error::Inconsistent("--to split needs --point".into()))?;
                    let (q, rec) = to_split(&ramified(&sf), &section(&sf, &name)?)?;
                    out.emit(
                        format!("{q}\n{rec}"),
                        json!({"model": q.to_string(), "x": rec.x_substitution(), "y": rec.y_substitution()}),
                    );
                }
                Target::Ramified => {
                    let q = split_model(&sf, point.as_deref())?;
                    let (e, rec) = to_ramified_with_record(&q);
                    out.emit(
                        format!("{e}\n{rec}"),
                        json!({"model": e.to_string(), "point": rec.point.to_string(), "x": rec.x_substitution(), "y": rec.y_substitution()}),
                    );
                }
            }
        }
        Command::Fibers { file } => {
            let e = ramified(&load_surface(&file)?);
            for f in all_singular_fibers(&e)? {
                let (a, b, c) = f.valuations;
                out.emit(
                    format!("{}  {}  euler {}  v(c4,c6,disc) = ({a}, {b}, {c})", place_label(&f.place), f.fiber_type, f.euler_number()),
                    json!({"place": place_label(&f.place), "type": f.fiber_type.to_string(), "euler": f.euler_number()}),
                );
            }
        }
        Command::Gamma { point, file } => {
            let sf = load_surface(&file)?;
            let e = ramified(&sf);
            let mut g = gamma_vector(&e, &section(&sf, &point)?)?;
            if let Some(order) = &sf.places {
                g = g.reordered(order)?;
            }
            for (v, ft, idx) in &g.entries {
                out.emit(
                    format!("{}  {ft}  {idx}", place_label(v)),
                    json!({"place": place_label(v), "type": ft.to_string(), "index": idx}),
                );
            }
        }
        Command::Height { point, file } => {
            let sf = load_surface(&file)?;
            let e = ramified(&sf);
            let p = section(&sf, &point)?;
            let h = height_pairing(&e, &p)?;
            let po = intersection_with_o(&e, &p)?;
            out.emit(
                format!("<{point},{point}> = {h}\n({point}.O) = {po}\ntwo-torsion: {}", e.is_two_torsion(&p)),
                json!({"height": h.to_string(), "intersection_with_o": po, "two_torsion": e.is_two_torsion(&p)}),
            );
        }
        Command::Quartic { command } => match command {
            QuarticCommand::Analyze { point, file } => {
                let q = quartic_of(&load_surface(&file)?, point.as_deref())?;
                let pts = q.singular_points()?;
                for s in &pts {
                    out.emit(s.to_string(), json!({"singular_point": s.to_string(), "node": s.is_node()}));
                }
                let prof = q.bitangent_profile()?;
                let v = theorem_check(&prof)?;
                out.emit(
                    format!("{q}\n{prof}\nbound check: {} ({})", if v.pass { "pass" } else { "fail" }, v.reason),
                    json!({"quartic": q.to_string(), "alpha": prof.alpha, "k": prof.k, "l": prof.l, "pass": v.pass, "reason": v.reason}),
                );
                return Ok(v.pass);
            }
            QuarticCommand::Lines { point, file } => {
                let q = quartic_of(&load_surface(&file)?, point.as_deref())?;
                for (v, c) in q.special_lines()? {
                    out.emit(format!("{}  {c}", place_label(&v)), json!({"place": place_label(&v), "class": c.to_string()}));
                }
            }
        },
        Command::Tables { command } => match command {
            TableCommand::Sigma { fiber_type, component } => {
                let ft: FiberType = fiber_type.parse()?;
                let perm = sigma_action(ft, &component)?;
                let map: Vec<String> = perm.map.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                out.emit(perm.to_string(), json!({"type": ft.to_string(), "component": component, "map": map}));
            }
            TableCommand::Branch { fiber_type, component } => {
                let ft: FiberType = fiber_type.parse()?;
                let rec = branch_singularity(ft, &component)?;
                out.emit(rec.to_string(), json!({"type": ft.to_string(), "component": component, "record": rec.to_string()}));
            }
        },
        Command::Verify { paths } => {
            let files = expand(&paths)?;
            let reports: Vec<VerificationReport> = std::thread::scope(|s| {
                let handles: Vec<_> = files.iter().map(|f| s.spawn(move || verify_one(f))).collect();
                handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
            });
            let mut ok = true;
            for r in &reports {
                ok &= r.all_pass();
                match out.format {
                    Format::Human => print!("{}", r.render_human()),
                    Format::Machine => print!("{}", r.render_machine()),
                }
            }
            return Ok(ok);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
