#include "vcflow/store_codec.hpp"

namespace vcflow {

bool stored_entry_flag(const FactStore& store, VertexId v) {
  auto bytes = store.get(StoreKey{v, Slot::In});
  if (!bytes) throw StoreInconsistent("no stored IN for vertex " + to_string(v));
  if (bytes->empty() || static_cast<unsigned char>((*bytes)[0]) > 1)
    throw DecodeError("bad IN record for vertex " + to_string(v));
  return (*bytes)[0] == 1;
}

}  // namespace vcflow
