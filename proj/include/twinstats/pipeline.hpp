// Copyright 2026 The twinstats Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

namespace twinstats {

//
// Run produce(i) for i in [first, last) on `workers` threads and hand the
// results to consume() on the calling thread strictly in ascending i.
//
// At most `window` results are in flight (produced or being produced but
// not yet consumed). consume() returns false to stop early; producers are
// then drained and joined. The first exception from either side is
// rethrown on the calling thread.
//
template <class Produce, class Consume>
void run_ordered(std::size_t first, std::size_t last, unsigned workers, std::size_t window,
                 Produce&& produce, Consume&& consume) {
    using T = std::decay_t<std::invoke_result_t<Produce&, std::size_t>>;

    if (workers <= 1) {
        for (std::size_t i = first; i < last; ++i)
            if (!consume(produce(i))) return;
        return;
    }
    window = std::max<std::size_t>(window, workers);

    std::mutex mu;
    std::condition_variable ready;  // a result landed, or failure
    std::condition_variable room;   // consumer advanced, or stop
    std::map<std::size_t, T> done;
    std::size_t next_claim = first;
    std::size_t next_consume = first;
    bool stop = false;
    std::exception_ptr failure;

    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::unique_lock lock(mu);
                room.wait(lock, [&] { return stop || next_claim >= last || next_claim < next_consume + window; });
                if (stop || next_claim >= last) return;
                i = next_claim++;
            }
            try {
                T value = produce(i);
                std::lock_guard lock(mu);
                done.emplace(i, std::move(value));
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
                stop = true;
                room.notify_all();
            }
            ready.notify_all();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);

    auto shutdown = [&] {
        {
            std::lock_guard lock(mu);
            stop = true;
        }
        room.notify_all();
        for (auto& t : pool) t.join();
    };

    try {
        while (next_consume < last) {
            std::optional<T> value;
            {
                std::unique_lock lock(mu);
                ready.wait(lock, [&] { return failure || done.count(next_consume) != 0; });
                if (failure) break;
                auto it = done.find(next_consume);
                value.emplace(std::move(it->second));
                done.erase(it);
            }
            bool more = consume(std::move(*value));
            {
                std::lock_guard lock(mu);
                ++next_consume;
            }
            room.notify_all();
            if (!more) break;
        }
    } catch (...) {
        shutdown();
        throw;
    }
    shutdown();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace twinstats
