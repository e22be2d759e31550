use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use clusterforge::cases;
use clusterforge::linalg::Rationals;
use clusterforge::prepmod::{
    build_complete_rigid, exchange_matrix_from_sequences, ext1_dim, hom_dim, injective, is_isomorphic, is_rigid,
    pairwise_ext, ExchangeSequence, IsoOptions, RatRep,
};
use serde::Deserialize;
use serde_json::json;

use crate::error::{invalid, CliError};
use crate::input;
use crate::output::Output;
use crate::CmdResult;

#[derive(Debug, Args)]
pub struct RigidArgs {
    #[arg(long = "type")]
    ty: String,
    /// The vertex subset K (may be empty).
    #[arg(long = "K", default_value = "")]
    k: String,
    /// Reduced word for the longest element whose first letters spell the
    /// longest element of the parabolic subgroup on K.
    #[arg(long)]
    word: String,
}

#[derive(Debug, Subcommand)]
pub enum PrepmodCmd {
    /// The injective module Q_i, as module JSON.
    Injective {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply E_w (or E†_w with --dagger); the last letter acts first.
    Efunctor {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long)]
        dagger: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// dim Hom(M, N).
    Hom {
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        n: PathBuf,
    },
    /// dim Ext^1(M, N).
    Ext {
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        n: PathBuf,
    },
    /// Isomorphism test (randomized; uses --rng-seed).
    Iso {
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        n: PathBuf,
    },
    /// Whether Ext^1(M, M) vanishes.
    Rigid {
        #[arg(long)]
        module: PathBuf,
    },
    /// Complete rigid module from a reduced word.
    BuildRigid {
        #[command(flatten)]
        rigid: RigidArgs,
        /// Write each summand as `<name>.json` into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Exchange matrix of a complete rigid module from exchange sequences.
    ExchangeMatrix {
        #[command(flatten)]
        rigid: RigidArgs,
        /// JSON list of `{"x": [...], "y": [...]}` multiplicity vectors over
        /// the summands, or `builtin:d4-example`.
        #[arg(long)]
        sequences: String,
        /// Vertices for extended rows (default: the complement of K).
        #[arg(long = "J")]
        j: Option<String>,
    },
}

impl PrepmodCmd {
    pub fn name(&self) -> &'static str {
        match self {
            PrepmodCmd::Injective { .. } => "injective",
            PrepmodCmd::Efunctor { .. } => "efunctor",
            PrepmodCmd::Hom { .. } => "hom",
            PrepmodCmd::Ext { .. } => "ext",
            PrepmodCmd::Iso { .. } => "iso",
            PrepmodCmd::Rigid { .. } => "rigid",
            PrepmodCmd::BuildRigid { .. } => "build-rigid",
            PrepmodCmd::ExchangeMatrix { .. } => "exchange-matrix",
        }
    }
}

#[derive(Deserialize)]
struct SequenceRecord {
    x: Vec<usize>,
    y: Vec<usize>,
}

fn emit_module(out: &Output, m: &RatRep, path: Option<&PathBuf>) -> Result<(), CliError> {
    if let Some(p) = path {
        input::write_file(p, &m.to_json())?;
    }
    let filtration = m.socle_filtration().to_string();
    let result = json!({ "module": m.to_record(), "dims": m.dims(), "socle_filtration": filtration });
    out.emit(&result, || {
        println!("dims: {:?}", m.dims());
        println!("socle filtration (top first): {filtration}");
        if path.is_none() {
            println!("{}", m.to_json());
        }
    });
    Ok(())
}

fn pair(m: &Path, n: &Path) -> Result<(RatRep, RatRep), CliError> {
    Ok((input::module(m)?, input::module(n)?))
}

pub fn run(cmd: &PrepmodCmd, out: &Output) -> CmdResult {
    match cmd {
        PrepmodCmd::Injective { ty, vertex, out: path } => {
            let q = injective(input::ty(ty)?, Rationals, *vertex)?;
            emit_module(out, &q, path.as_ref())?;
            Ok(true)
        }
        PrepmodCmd::Efunctor { module, word, dagger, out: path } => {
            let m = input::module(module)?;
            let letters = input::word(word)?;
            for &l in &letters {
                m.ty().check_vertex(l)?;
            }
            emit_module(out, &m.e_word(&letters, *dagger), path.as_ref())?;
            Ok(true)
        }
        PrepmodCmd::Hom { m, n } => {
            let (a, b) = pair(m, n)?;
            let d = hom_dim(&a, &b)?;
            out.emit(&json!({ "hom_dim": d }), || println!("dim Hom = {d}"));
            Ok(true)
        }
        PrepmodCmd::Ext { m, n } => {
            let (a, b) = pair(m, n)?;
            let d = ext1_dim(&a, &b)?;
            out.emit(&json!({ "ext1_dim": d }), || println!("dim Ext^1 = {d}"));
            Ok(true)
        }
        PrepmodCmd::Iso { m, n } => {
            let (a, b) = pair(m, n)?;
            let opts = IsoOptions { seed: out.rng_seed, ..IsoOptions::default() };
            let iso = is_isomorphic(&a, &b, opts)?;
            out.emit(&json!({ "isomorphic": iso }), || println!("isomorphic: {iso}"));
            Ok(true)
        }
        PrepmodCmd::Rigid { module } => {
            let m = input::module(module)?;
            let rigid = is_rigid(&m)?;
            let ext = ext1_dim(&m, &m)?;
            out.emit(&json!({ "rigid": rigid, "self_ext1_dim": ext }), || {
                println!("rigid: {rigid} (dim Ext^1(M, M) = {ext})");
            });
            Ok(true)
        }
        PrepmodCmd::BuildRigid { rigid, out_dir } => {
            let c = build_complete_rigid(input::ty(&rigid.ty)?, &input::word(&rigid.k)?, &input::word(&rigid.word)?)?;
            let mods: Vec<RatRep> = c.summands.iter().map(|s| s.module.clone()).collect();
            let ext = pairwise_ext(&mods)?;
            let pairwise_zero = ext.iter().flatten().all(|&e| e == 0);
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir).map_err(|e| invalid(format!("cannot create {}: {e}", dir.display())))?;
                for s in &c.summands {
                    input::write_file(&dir.join(format!("{}.json", s.name)), &s.module.to_json())?;
                }
            }
            let report = c.report();
            let result = json!({ "construction": report, "pairwise_ext1": ext, "rigid": pairwise_zero });
            out.emit(&result, || {
                println!("r = {}, r_K = {}, summands = {}", c.r, c.r_k, c.summands.len());
                println!("q: {:?}", c.q);
                println!("zero indices: {:?}", c.zero_indices);
                for s in &report.summands {
                    println!("  {}: dims {:?}  {}", s.name, s.dims, s.filtration);
                }
                println!("pairwise Ext^1 vanishes: {pairwise_zero}");
            });
            Ok(pairwise_zero)
        }
        PrepmodCmd::ExchangeMatrix { rigid, sequences, j } => {
            let ty = input::ty(&rigid.ty)?;
            let k = input::word(&rigid.k)?;
            let c = build_complete_rigid(ty, &k, &input::word(&rigid.word)?)?;
            let seqs: Vec<ExchangeSequence> = if sequences == "builtin:d4-example" {
                cases::d4_exchange_sequences()
            } else {
                let recs: Vec<SequenceRecord> = serde_json::from_str(&input::read_file(Path::new(sequences))?)?;
                recs.into_iter().map(|r| ExchangeSequence { x: r.x, y: r.y }).collect()
            };
            let j_vertices: Vec<usize> = match j {
                Some(s) => input::word(s)?,
                None => ty.vertices().filter(|v| !k.contains(v)).collect(),
            };
            let mods: Vec<RatRep> = c.summands.iter().map(|s| s.module.clone()).collect();
            let report = exchange_matrix_from_sequences(&mods, &seqs, &j_vertices)?;
            let names: Vec<&str> = c.summands.iter().map(|s| s.name.as_str()).collect();
            let result =
                json!({ "summands": names, "j": j_vertices, "matrix": report.matrix, "extension": report.extension });
            out.emit(&result, || {
                println!("B(T), rows {names:?}:");
                for r in &report.matrix {
                    println!("  {r:?}");
                }
                for (v, r) in j_vertices.iter().zip(&report.extension) {
                    println!("extension row for vertex {v}: {r:?}");
                }
            });
            Ok(true)
        }
    }
}
