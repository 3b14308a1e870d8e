#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "prolearn/dataset.hpp"
#include "prolearn/errors.hpp"
#include "prolearn/random.hpp"

namespace prolearn {

/// One stretch of the stream with a fixed set of permitted labels.
/// Positions are 1-based and inclusive on both ends.
struct Phase {
    std::size_t start;
    std::size_t end;
    ClassList classes;

    std::size_t length() const { return end - start + 1; }
};

/// Which classes may appear where in a stream, plus how many leading samples
/// form the initial training block. Phases must tile 1..span contiguously and
/// each phase's class set must contain the previous one: classes arrive, they
/// never leave.
struct Schedule {
    std::size_t init_block = 0;
    std::vector<Phase> phases;

    std::size_t span() const { return phases.empty() ? 0 : phases.back().end; }
    const ClassList& final_classes() const { return phases.back().classes; }
};

inline void validate_schedule(const Schedule& schedule) {
    if (schedule.phases.empty()) throw ScheduleError("schedule has no phases");
    std::size_t expected_start = 1;
    std::set<std::string> previous;
    for (std::size_t p = 0; p < schedule.phases.size(); ++p) {
        const Phase& phase = schedule.phases[p];
        std::string where = "phase " + std::to_string(p + 1);
        if (phase.start != expected_start)
            throw ScheduleError(where + " starts at " + std::to_string(phase.start) +
                                ", expected " + std::to_string(expected_start));
        if (phase.end < phase.start)
            throw ScheduleError(where + " ends before it starts");
        if (phase.classes.empty()) throw ScheduleError(where + " permits no classes");
        std::set<std::string> current(phase.classes.begin(), phase.classes.end());
        if (current.size() != phase.classes.size())
            throw ScheduleError(where + " lists a class twice");
        for (const auto& c : previous)
            if (!current.count(c))
                throw ScheduleError(where + " drops class '" + c +
                                    "'; classes may only be added");
        previous = std::move(current);
        expected_start = phase.end + 1;
    }
    if (schedule.init_block < 1) throw ScheduleError("init_block must be at least 1");
    if (schedule.init_block > schedule.phases.front().end)
        throw ScheduleError("init_block " + std::to_string(schedule.init_block) +
                            " extends past the first phase (ends at " +
                            std::to_string(schedule.phases.front().end) + ")");
}

inline Schedule parse_schedule(const nlohmann::json& doc) {
    Schedule schedule;
    try {
        schedule.init_block = doc.at("init_block").get<std::size_t>();
        for (const auto& item : doc.at("phases")) {
            Phase phase;
            phase.start = item.at("start").get<std::size_t>();
            phase.end = item.at("end").get<std::size_t>();
            for (const auto& c : item.at("classes")) phase.classes.push_back(c.get<std::string>());
            schedule.phases.push_back(std::move(phase));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ScheduleError(std::string("malformed schedule: ") + e.what());
    }
    validate_schedule(schedule);
    return schedule;
}

inline Schedule load_schedule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open schedule file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ScheduleError(std::string("schedule is not valid JSON: ") + e.what());
    }
    return parse_schedule(doc);
}

/// Schedule that permits every class everywhere — what you get when no
/// arrival pattern is requested.
inline Schedule trivial_schedule(const ClassList& classes, std::size_t span,
                                 std::size_t init_block) {
    Schedule schedule;
    schedule.init_block = init_block;
    schedule.phases.push_back({1, span, classes});
    validate_schedule(schedule);
    return schedule;
}

/// Two-phase variant of a schedule that concentrates all late arrivals at a
/// single position: the first phase's classes run over [1, point-1], the
/// final class set takes over at `point`. Used to ask how the arrival
/// position of the same novelty affects learning.
///
/// A point inside the initial block collapses to a single all-classes phase:
/// the registry is seeded from the initial block, so anything arriving there
/// was never new to begin with.
inline Schedule single_introduction(const Schedule& proto, std::size_t point) {
    if (proto.phases.empty()) throw ScheduleError("schedule has no phases");
    std::size_t span = proto.span();
    if (point < 2 || point > span)
        throw ScheduleError("introduction point " + std::to_string(point) +
                            " must lie in [2, " + std::to_string(span) + "]");
    Schedule schedule;
    schedule.init_block = proto.init_block;
    if (point <= proto.init_block) {
        schedule.phases.push_back({1, span, proto.final_classes()});
    } else {
        schedule.phases.push_back({1, point - 1, proto.phases.front().classes});
        schedule.phases.push_back({point, span, proto.final_classes()});
    }
    validate_schedule(schedule);
    return schedule;
}

/// Arrange dataset rows into a stream that honours the schedule: each
/// position draws uniformly (seeded) from the not-yet-used rows whose label
/// the current phase permits, except that the first positions of a phase are
/// guaranteed to carry one sample of each class that phase introduces — so a
/// permitted class actually shows up the moment it is allowed to.
///
/// Interior phases must be exactly fillable; the final phase simply stops
/// early if the pool runs dry, so a schedule may name a nominal span larger
/// than the data at hand. Returns row indices into ds.
inline std::vector<std::size_t> build_stream(const LabeledDataset& ds, const Schedule& schedule,
                                             std::uint64_t seed) {
    validate_schedule(schedule);
    std::set<std::string> available(ds.labels.begin(), ds.labels.end());
    for (const auto& c : schedule.final_classes())
        if (!available.count(c))
            throw ScheduleError("schedule names class '" + c + "' absent from " + ds.name);

    std::mt19937_64 rng(seed);
    std::vector<bool> used(ds.size(), false);
    std::vector<std::size_t> stream;
    stream.reserve(std::min(schedule.span(), ds.size()));
    std::set<std::string> prior;

    for (std::size_t p = 0; p < schedule.phases.size(); ++p) {
        const Phase& phase = schedule.phases[p];
        const bool last = p + 1 == schedule.phases.size();
        std::string where = "phase " + std::to_string(p + 1);

        std::set<std::string> allowed(phase.classes.begin(), phase.classes.end());
        ClassList incoming;
        for (const auto& c : phase.classes)
            if (!prior.count(c)) incoming.push_back(c);

        std::vector<std::size_t> pool;
        for (std::size_t i = 0; i < ds.size(); ++i)
            if (!used[i] && allowed.count(ds.labels[i])) pool.push_back(i);
        shuffle(pool, rng);

        // Pull one sample of each incoming class to the front, keeping the
        // incoming order, so novelty lands exactly at the phase boundary.
        std::size_t front = 0;
        for (const auto& c : incoming) {
            std::size_t found = pool.size();
            for (std::size_t i = front; i < pool.size(); ++i)
                if (ds.labels[pool[i]] == c) {
                    found = i;
                    break;
                }
            if (found == pool.size())
                throw ScheduleError(where + " introduces class '" + c +
                                    "' but no unused samples of it remain");
            std::swap(pool[front], pool[found]);
            ++front;
        }

        std::size_t want = phase.length();
        if (want < incoming.size())
            throw ScheduleError(where + " is shorter than the " +
                                std::to_string(incoming.size()) + " classes it introduces");
        std::size_t take = want;
        if (pool.size() < want) {
            if (!last)
                throw ScheduleError(where + " needs " + std::to_string(want) +
                                    " samples but only " + std::to_string(pool.size()) +
                                    " of its classes remain");
            take = pool.size();
        }
        for (std::size_t i = 0; i < take; ++i) {
            stream.push_back(pool[i]);
            used[pool[i]] = true;
        }
        prior = std::move(allowed);
    }
    return stream;
}

/// Materialize stream positions [begin, end) as a feature chunk plus labels.
inline std::pair<Matrix, std::vector<std::string>> make_chunk(const LabeledDataset& ds,
                                                              const std::vector<std::size_t>& stream,
                                                              std::size_t begin,
                                                              std::size_t end) {
    if (begin >= end || end > stream.size()) throw EmptyChunkError("empty stream slice");
    Matrix x(end - begin, ds.feature_count());
    std::vector<std::string> labels;
    labels.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t j = 0; j < ds.feature_count(); ++j)
            x(i - begin, j) = ds.features(stream[i], j);
        labels.push_back(ds.labels[stream[i]]);
    }
    return {std::move(x), std::move(labels)};
}

} // namespace prolearn
