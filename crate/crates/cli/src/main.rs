mod expect;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use octoleech::action::{
    pair_frame, pair_permutation, FamilyName, GeneratorFamily, Parenthesization, PlaneOrbit,
};
use octoleech::design::{plane_ambient, Ambient, DesignReport, DistributionMode, PointSet, TransitivityCertificate};
use octoleech::lattice::leech::{LeechLattice, PairSet, ShortVectors};
use octoleech::lattice::{closed_on_roots, d8_roots, left_right_common_roots, moufang_relation_check, MoufangRelation, OctLattice};
use octoleech::permgroup::{is_transitive, orbits, schreier_sims, Permutation};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] octoleech::Error),
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("check failed: {0}")]
    Check(String),
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "octoleech", version, about = "Leech lattice and octonionic plane computations")]
struct Cli {
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the 196560 Leech short vectors.
    Shortvecs {
        /// Write the sorted vectors here, one per line.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-test lattice membership of every vector.
        #[arg(long)]
        validate: bool,
        /// Append the shape (s1, s2, s3) to each written row.
        #[arg(long)]
        shapes: bool,
    },
    /// Order and transitivity of the group generated by reflections.
    Group {
        /// Family spec such as `S,V0,V1,V3`; omit for the Suzuki chain.
        #[arg(long)]
        gens: Option<String>,
        /// Also compute orders past G2(4) (3.Suz, Co1).
        #[arg(long)]
        stretch: bool,
    },
    /// Verify a point set as a projective design.
    Design {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long)]
        gens: String,
        /// Pair distribution mode (default: transitive for real, full for plane).
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Intersect the seven 819-point designs.
    Intersect {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Root-level lattice product relations.
    Relations,
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Real,
    Plane,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Full,
    Transitive,
}

impl From<Mode> for DistributionMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Full => DistributionMode::Full,
            Mode::Transitive => DistributionMode::Transitive,
        }
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Check(msg()))
    }
}

fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<()> {
    let io = |e| CliError::Io(path.to_path_buf(), e);
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    f(&mut w).and_then(|_| w.flush()).map_err(io)
}

fn shortvecs(out: Option<&Path>, validate: bool, shapes: bool) -> Result<()> {
    let sv = ShortVectors::shared();
    let counts = sv.shape_counts();
    let pairs = PairSet::shared().len();
    for (i, c) in counts.iter().enumerate() {
        println!("shape s{} {c}", i + 1);
    }
    println!("total {}", sv.len());
    println!("pairs {pairs}");
    if validate {
        sv.validate(LeechLattice::shared())?;
        println!("validate ok");
    }
    if let Some(path) = out {
        write_file(path, |w| sv.write_dump(w, shapes))?;
    }
    check(sv.len() == 196560 && counts == [720, 11520, 184320] && pairs == 98280, || {
        format!("census {} {counts:?} {pairs}", sv.len())
    })
}

fn pair_perms(fam: &GeneratorFamily) -> Result<Vec<Permutation>> {
    let pairs = PairSet::shared();
    Ok(fam.actions()?.iter().map(|a| pair_permutation(a, pairs)).collect::<std::result::Result<_, _>>()?)
}

fn group_one(fam: &GeneratorFamily, frame: &[usize]) -> Result<()> {
    let pairs = PairSet::shared();
    let perms = pair_perms(fam)?;
    let g = schreier_sims(pairs.len(), &perms, Some(frame))?;
    let orbit_count = orbits(&perms, pairs.len()).len();
    println!("family {fam}");
    println!("generators {}", perms.len());
    println!("degree {}", pairs.len());
    println!("order {}", g.order());
    println!("orbits {orbit_count}");
    println!("transitive {}", is_transitive(&perms, pairs.len()));
    if let Some((want, _)) = expect::lookup(fam) {
        check(g.order() == want.into(), || format!("order of <{fam}> is {}, expected {want}", g.order()))?;
    }
    Ok(())
}

fn group(gens: Option<&str>, stretch: bool) -> Result<()> {
    let frame = pair_frame(PairSet::shared());
    if let Some(spec) = gens {
        let fam = GeneratorFamily::parse(spec)?;
        let big = expect::lookup(&fam).is_some_and(|(o, _)| expect::is_stretch(o));
        check(stretch || !big, || format!("<{fam}> is past G2(4); pass --stretch to compute it"))?;
        return group_one(&fam, &frame);
    }
    use FamilyName::*;
    let mut chain: Vec<Vec<FamilyName>> =
        vec![vec![A2], vec![Vinf], vec![S], vec![S, V(0)], vec![S, V(0), V(1)], vec![S, V(0), V(1), V(3)]];
    if stretch {
        chain.push(vec![S, V(2), V(5), V(6), V(0)]);
        chain.push(std::iter::once(S).chain((0..7).map(V)).collect());
    }
    for (i, names) in chain.iter().enumerate() {
        if i > 0 {
            println!();
        }
        group_one(&GeneratorFamily::new(names), &frame)?;
    }
    Ok(())
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    print!("{text}");
    if let Some(path) = out {
        write_file(path, |w| w.write_all(text.as_bytes()))?;
    }
    Ok(())
}

fn design(target: Target, spec: &str, mode: Option<Mode>, out: Option<&Path>) -> Result<()> {
    let fam = GeneratorFamily::parse(spec)?;
    let (set, perms, default_mode) = match target {
        Target::Real => {
            let set = PointSet::real(PairSet::shared().reps().to_vec(), Ambient::leech())?;
            (set, pair_perms(&fam)?, Mode::Transitive)
        }
        Target::Plane => {
            let orb = PlaneOrbit::generate(&fam.actions()?, &fam.plane_points()?, Parenthesization::Right, 100_000)?;
            orb.validate()?;
            let amb = plane_ambient(orb.points())?;
            (PointSet::plane(orb.points().to_vec(), amb)?, orb.permutations().to_vec(), Mode::Full)
        }
    };
    let mode = DistributionMode::from(mode.unwrap_or(default_mode));
    let cert = match mode {
        DistributionMode::Transitive => Some(TransitivityCertificate::verify(&set, &perms)?),
        DistributionMode::Full => None,
    };
    let rep = DesignReport::analyse(&set, mode, cert.as_ref(), None)?;
    emit(&format!("family {fam}\n{rep}"), out)?;
    match (target, expect::lookup(&fam)) {
        (Target::Plane, Some((_, Some((n, t))))) => {
            check(rep.points == n && rep.strength == t, || {
                format!("{} points with strength {}, expected {n} and {t}", rep.points, rep.strength)
            })?;
            check(n != 819 || rep.tight, || "819-point orbit is not tight".into())
        }
        (Target::Real, _) => check(rep.strength == 5 && rep.tight, || format!("strength {}, tight {}", rep.strength, rep.tight)),
        _ => Ok(()),
    }
}

fn intersect(out: Option<&Path>) -> Result<()> {
    use std::collections::BTreeSet;
    use std::fmt::Write as _;
    use FamilyName::S;
    let v = FamilyName::v;
    let orbit = |names: &[FamilyName]| -> Result<BTreeSet<_>> {
        let fam = GeneratorFamily::new(names);
        let orb = PlaneOrbit::generate(&fam.actions()?, &fam.plane_points()?, Parenthesization::Right, 100_000)?;
        Ok(orb.points().iter().cloned().collect())
    };
    let designs: Vec<BTreeSet<_>> = (0..7).map(|t| orbit(&[S, v(t), v(t + 1), v(t + 3)])).collect::<Result<_>>()?;
    let s_orbit = orbit(&[S])?;
    let mut text = String::new();
    for (t, d) in designs.iter().enumerate() {
        writeln!(text, "design {t} points {}", d.len()).unwrap();
    }
    for a in 0..7 {
        let row: Vec<String> = (0..7).map(|b| designs[a].intersection(&designs[b]).count().to_string()).collect();
        writeln!(text, "pairwise {a} {}", row.join(" ")).unwrap();
    }
    let common = designs[1..].iter().fold(designs[0].clone(), |acc, d| acc.intersection(d).cloned().collect());
    writeln!(text, "intersection {}", common.len()).unwrap();
    writeln!(text, "equals_s_orbit {}", common == s_orbit).unwrap();
    emit(&text, out)?;
    check(designs.iter().all(|d| d.len() == 819), || "a design does not have 819 points".into())?;
    check(common == s_orbit, || format!("intersection has {} points, S-orbit {}", common.len(), s_orbit.len()))
}

fn relations() -> Result<()> {
    let mut ok = true;
    for rel in MoufangRelation::ALL {
        let r = moufang_relation_check(rel);
        println!("{} products {} closed {} spans {}", rel.label(), r.products, r.closed, r.spans);
        if let Some((a, b)) = &r.witness {
            println!("  witness {a} * {b}");
        }
        ok &= r.holds();
    }
    let common = left_right_common_roots();
    let mut d8 = d8_roots();
    let mut sorted = common.clone();
    sorted.sort();
    d8.sort();
    println!("L ∩ R roots {} equal_d8 {}", common.len(), sorted == d8);
    ok &= common.len() == 112 && sorted == d8;
    for t in 0..7 {
        let closed = closed_on_roots(&OctLattice::coxeter_dickson(t))?;
        println!("A{t} closed {closed}");
        ok &= closed;
    }
    let b_closed = closed_on_roots(&OctLattice::kirmse())?;
    println!("B closed {b_closed}");
    check(ok && !b_closed, || "a lattice relation does not hold".into())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Shortvecs { out, validate, shapes } => shortvecs(out.as_deref(), validate, shapes),
        Command::Group { gens, stretch } => group(gens.as_deref(), stretch),
        Command::Design { target, gens, mode, out } => design(target, &gens, mode, out.as_deref()),
        Command::Intersect { out } => intersect(out.as_deref()),
        Command::Relations => relations(),
        Command::Selftest => check(octoleech::acceptance::run_and_print(), || "acceptance suite".into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
