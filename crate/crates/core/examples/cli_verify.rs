//! Running the command line in-process: the isogeny check for a smooth Dwork cubic.

fn main() {
    let cache = std::env::temp_dir().join(format!("dworklab-verify-{}.jsonl", std::process::id()));
    let cache = cache.to_string_lossy().into_owned();
    let args = ["dworklab", "--cache", &cache, "verify", "--theorem", "isogeny-n2", "--p", "13", "--n", "2", "--lambda", "2", "--max-m", "3"];
    let mut out = Vec::new();
    let code = dworklab::cli::run(args, &mut out, &mut std::io::stderr());
    println!("{}", String::from_utf8_lossy(&out));
    println!("exit code {code}");
    let _ = std::fs::remove_file(&cache);
}
