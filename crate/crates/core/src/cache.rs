//! Initialize-once storage for per-backend constants (Υ tensor, projectors).

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

type Store = Mutex<HashMap<(TypeId, &'static str), Arc<dyn Any + Send + Sync>>>;

fn store() -> &'static Store {
    static S: OnceLock<Store> = OnceLock::new();
    S.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns the value cached under `key` for type `T`, computing it on first use.
///
/// `init` runs without the lock held, so it may itself use the cache; if two
/// threads race, the first stored value wins and both return it.
pub(crate) fn cached<T: Send + Sync + 'static>(key: &'static str, init: impl FnOnce() -> T) -> Arc<T> {
    let id = (TypeId::of::<T>(), key);
    if let Some(v) = store().lock().expect("cache lock").get(&id) {
        return v.clone().downcast::<T>().expect("cache type");
    }
    let value: Arc<dyn Any + Send + Sync> = Arc::new(init());
    let mut guard = store().lock().expect("cache lock");
    let entry = guard.entry(id).or_insert(value);
    entry.clone().downcast::<T>().expect("cache type")
}
