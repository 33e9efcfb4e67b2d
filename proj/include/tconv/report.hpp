#pragma once

#include "universe.hpp"

#include <json.hpp>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace tconv
{

enum class verdict_kind
{
    pass,
    fail,
    relative_pass,
    skipped,
};

inline std::string to_string( verdict_kind k )
{
    switch ( k )
    {
    case verdict_kind::pass: return "pass";
    case verdict_kind::fail: return "fail";
    case verdict_kind::relative_pass: return "relative-pass";
    case verdict_kind::skipped: return "skipped";
    }
    return "?";
}

// One line of a report. `detail` is the witness for fail, the universe
// summary for relative-pass and the reason for skipped.
struct verdict
{
    std::string suite;
    std::string check;
    verdict_kind kind = verdict_kind::pass;
    std::string detail;
};

struct budgets
{
    std::size_t enumeration = 20000;
    std::size_t samples = 500;
    std::size_t closure_rounds = 4;
};

struct report
{
    std::string model;
    std::uint64_t seed = 0;
    budgets limits;
    std::vector<verdict> entries;
    std::vector<std::pair<std::string, double>> timing; // seconds per suite; only filled on request

    void add( std::string suite, std::string check, verdict_kind kind, std::string detail = {} )
    {
        entries.push_back( { std::move( suite ), std::move( check ), kind, std::move( detail ) } );
    }

    // Map a check result: unsatisfied closure becomes skipped, quantification
    // over a generated universe becomes relative-pass.
    void add( std::string suite, std::string check, const check_result& r, const std::string& universe = {} )
    {
        if ( r.holds )
        {
            if ( r.relative )
                add( std::move( suite ), std::move( check ), verdict_kind::relative_pass,
                     universe.empty() ? r.note : universe + ( r.note.empty() ? "" : "; " + r.note ) );
            else
                add( std::move( suite ), std::move( check ), verdict_kind::pass, r.note );
        }
        else if ( r.note == "closure-insufficient" )
            add( std::move( suite ), std::move( check ), verdict_kind::skipped,
                 r.witness.starts_with( r.note ) ? r.witness : r.note + ": " + r.witness );
        else
            add( std::move( suite ), std::move( check ), verdict_kind::fail, r.witness );
    }

    [[nodiscard]] std::size_t count( verdict_kind k ) const
    {
        std::size_t c = 0;
        for ( const auto& e : entries )
            c += e.kind == k;
        return c;
    }

    [[nodiscard]] bool failed() const { return count( verdict_kind::fail ) > 0; }
};

inline std::string to_text( const report& r )
{
    std::ostringstream os;
    os << "model " << r.model << "\n";
    os << "seed " << r.seed << " budget " << r.limits.enumeration << " samples " << r.limits.samples
       << " closure-rounds " << r.limits.closure_rounds << "\n";
    std::string suite;
    for ( const auto& e : r.entries )
    {
        if ( e.suite != suite )
        {
            suite = e.suite;
            os << "\n[" << suite << "]\n";
        }
        os << "  " << to_string( e.kind ) << "  " << e.check;
        if ( !e.detail.empty() )
            os << "  -- " << e.detail;
        os << "\n";
    }
    os << "\n"
       << r.count( verdict_kind::pass ) << " pass, " << r.count( verdict_kind::relative_pass ) << " relative-pass, "
       << r.count( verdict_kind::fail ) << " fail, " << r.count( verdict_kind::skipped ) << " skipped\n";
    for ( const auto& [ name, secs ] : r.timing )
        os << "time " << name << " " << secs << "s\n";
    return os.str();
}

// Schema: {model, seed, budgets{enumeration,samples,closure_rounds},
// verdicts[{suite,check,verdict,detail}], summary{pass,relative-pass,fail,
// skipped}, timing?{suite: seconds}}.
inline nlohmann::ordered_json to_json( const report& r )
{
    nlohmann::ordered_json j;
    j[ "model" ] = r.model;
    j[ "seed" ] = r.seed;
    j[ "budgets" ] = { { "enumeration", r.limits.enumeration },
                       { "samples", r.limits.samples },
                       { "closure_rounds", r.limits.closure_rounds } };
    j[ "verdicts" ] = nlohmann::ordered_json::array();
    for ( const auto& e : r.entries )
        j[ "verdicts" ].push_back(
                { { "suite", e.suite }, { "check", e.check }, { "verdict", to_string( e.kind ) }, { "detail", e.detail } } );
    j[ "summary" ] = { { "pass", r.count( verdict_kind::pass ) },
                       { "relative-pass", r.count( verdict_kind::relative_pass ) },
                       { "fail", r.count( verdict_kind::fail ) },
                       { "skipped", r.count( verdict_kind::skipped ) } };
    if ( !r.timing.empty() )
    {
        j[ "timing" ] = nlohmann::ordered_json::object();
        for ( const auto& [ name, secs ] : r.timing )
            j[ "timing" ][ name ] = secs;
    }
    return j;
}

} // namespace tconv
