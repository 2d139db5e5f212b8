//! Storing counts in a JSON-lines cache and serving them back.

use dworklab::cache::{CacheKey, CountCache, CountKind};
use dworklab::dwork::{count_dwork, count_quotient, DworkParams};
use dworklab::field::Field;
use dworklab::hypersurface::CountConfig;

fn main() -> dworklab::Result<()> {
    let path = std::env::temp_dir().join(format!("dworklab-example-{}.jsonl", std::process::id()));
    let f = Field::new(13, 1)?;
    let params = DworkParams::new(2, f.from_int(2), &f)?;
    let cfg = CountConfig::default();
    for round in 0..2 {
        let mut cache = CountCache::open(&path)?;
        for m in 1..=3 {
            let (x, hit_x) = cache.get_or_compute(CacheKey::new(&params, m, &CountKind::Plain), || count_dwork(&params, m, &cfg))?;
            let (y, hit_y) =
                cache.get_or_compute(CacheKey::new(&params, m, &CountKind::Quotient), || count_quotient(&params, m, &cfg))?;
            println!("round {round}, m = {m}: #X = {x} (cached {hit_x}), #X/G = {y} (cached {hit_y})");
        }
    }
    print!("{}", std::fs::read_to_string(&path).unwrap_or_default());
    let _ = std::fs::remove_file(&path);
    Ok(())
}
