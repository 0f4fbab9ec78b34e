//! Drive an experiment from a `RunConfig`, as the command-line tool does,
//! and replay it from its manifest.

use perciso::experiment::{execute, Command, Manifest, RunConfig};

fn main() -> perciso::Result<()> {
    let mut cfg = RunConfig::new(Command::Beta);
    cfg.p = 0.75;
    cfg.n = Some(16);
    cfg.dirs = Some(3);
    cfg.replicas = Some(6);
    cfg.n_list = vec![8, 16];
    let out = execute(&cfg)?;
    for a in &out.artifacts {
        println!("== {} ==\n{}", a.name, String::from_utf8_lossy(&a.bytes));
    }
    let m = Manifest::new(&cfg, &out);
    println!("{}", m.to_json()?);
    let again = execute(&serde_json::from_str::<Manifest>(&m.to_json()?)?.config)?;
    println!("replay identical: {}", again.artifacts == out.artifacts);
    Ok(())
}
