// The built-in seed catalogue.
#pragma once

#include "kadaru/seed_data.hpp"
#include "kadaru/signdb.hpp"

namespace kadaru {

inline const Catalogue& seed_catalogue() {
  static const Catalogue db = load_db(kSeedDatabase);
  return db;
}

}  // namespace kadaru
