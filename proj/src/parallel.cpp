#include "recnum/parallel.hpp"

#include <atomic>

namespace recnum {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned threads) { g_threads.store(std::max(1u, threads)); }

unsigned thread_count() { return g_threads.load(); }

}  // namespace recnum
