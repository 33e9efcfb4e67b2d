#pragma once

#include "tfilter.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tconv
{

// Outcome of one property check. `relative` marks a result quantified over a
// universe that is not the full filter set.
struct check_result
{
    bool holds = true;
    std::string witness;
    bool relative = false;
    std::string note;

    static check_result fail( std::string w ) { return { false, std::move( w ), false, {} }; }
};

// Finite stand-in for the set of all top-filters on a carrier: an explicit,
// duplicate-free list that always contains every point filter.
class filter_universe
{
    std::shared_ptr<const residuated_lattice> _lattice;
    std::size_t _domain = 0;
    std::vector<tfilter> _filters;
    std::map<fuzzy_set, std::size_t> _index;
    std::vector<std::size_t> _points;
    std::vector<std::uint8_t> _contained; // [i*m+j]: F_i subset of F_j
    bool _complete = false;

public:
    filter_universe( std::shared_ptr<const residuated_lattice> L, std::size_t domain, std::vector<tfilter> filters,
                     bool complete )
            : _lattice{ std::move( L ) }, _domain{ domain }, _complete{ complete }
    {
        for ( std::size_t x = 0; x < domain; ++x )
            filters.push_back( point_filter( *_lattice, domain, x ) );
        std::sort( filters.begin(), filters.end() );
        filters.erase( std::unique( filters.begin(), filters.end() ), filters.end() );
        _filters = std::move( filters );
        for ( std::size_t i = 0; i < _filters.size(); ++i )
        {
            if ( _filters[ i ].domain() != domain )
                throw error( error_kind::domain_mismatch, "universe filter on the wrong carrier" );
            _index.emplace( _filters[ i ].generator(), i );
        }
        for ( std::size_t x = 0; x < domain; ++x )
            _points.push_back( *find( point_filter( *_lattice, domain, x ) ) );
        const auto m = _filters.size();
        _contained.assign( m * m, 0 );
        for ( std::size_t i = 0; i < m; ++i )
            for ( std::size_t j = 0; j < m; ++j )
                _contained[ i * m + j ] = filter_leq( *_lattice, _filters[ i ], _filters[ j ] );
    }

    [[nodiscard]] const residuated_lattice& lattice() const { return *_lattice; }
    [[nodiscard]] const std::shared_ptr<const residuated_lattice>& lattice_ptr() const { return _lattice; }
    [[nodiscard]] std::size_t domain() const { return _domain; }
    [[nodiscard]] std::size_t size() const { return _filters.size(); }
    [[nodiscard]] bool complete() const { return _complete; }
    [[nodiscard]] const tfilter& operator[]( std::size_t i ) const { return _filters[ i ]; }
    [[nodiscard]] const std::vector<tfilter>& filters() const { return _filters; }
    [[nodiscard]] std::size_t point( std::size_t x ) const { return _points[ x ]; }
    [[nodiscard]] bool contained( std::size_t i, std::size_t j ) const { return _contained[ i * size() + j ] != 0; }

    [[nodiscard]] std::optional<std::size_t> find( const tfilter& F ) const
    {
        if ( F.domain() != _domain )
            return std::nullopt;
        auto it = _index.find( F.generator() );
        if ( it == _index.end() )
            return std::nullopt;
        return it->second;
    }

    // Throws the given kind when F lies outside the universe.
    [[nodiscard]] std::size_t index_of( const tfilter& F, error_kind kind = error_kind::closure_insufficient ) const
    {
        if ( auto i = find( F ) )
            return *i;
        throw error( kind, "filter " + describe( *_lattice, F ) + " is not in the universe" );
    }

    [[nodiscard]] std::string summary() const
    {
        return std::to_string( size() ) + " filters on " + std::to_string( _domain ) + " points (" +
               ( _complete ? "complete" : "relative" ) + ")";
    }
};

using universe_ptr = std::shared_ptr<const filter_universe>;

inline universe_ptr complete_universe( std::shared_ptr<const residuated_lattice> L, std::size_t n, std::size_t budget )
{
    auto filters = enumerate_filters( *L, n, budget );
    return std::make_shared<const filter_universe>( std::move( L ), n, std::move( filters ), true );
}

inline universe_ptr make_universe( std::shared_ptr<const residuated_lattice> L, std::size_t n,
                                   std::vector<tfilter> filters )
{
    return std::make_shared<const filter_universe>( std::move( L ), n, std::move( filters ), false );
}

// Which operations the universe is closed under.
struct closure_flags
{
    bool points = true;
    bool odot = true;
    bool inverse = true;
    bool intersection = true;
};

inline closure_flags compute_closure( const filter_universe& U, const finite_group* G )
{
    closure_flags c;
    const auto& L = U.lattice();
    for ( std::size_t x = 0; x < U.domain(); ++x )
        c.points = c.points && U.find( point_filter( L, U.domain(), x ) ).has_value();
    for ( const auto& F : U.filters() )
    {
        if ( G )
            c.inverse = c.inverse && U.find( inverse_filter( L, *G, F ) ).has_value();
        for ( const auto& H : U.filters() )
        {
            if ( G )
                c.odot = c.odot && U.find( odot_filter( L, *G, F, H ) ).has_value();
            c.intersection = c.intersection && U.find( intersect_filter( L, F, H ) ).has_value();
        }
    }
    if ( !G )
        c.odot = c.inverse = false;
    return c;
}

// Closure of the seeds under the given binary/unary filter operations, for at
// most `rounds` rounds or until the universe would exceed `cap` filters.
// Returns the universe and whether a fixpoint was reached.
template <typename Unary, typename Binary>
std::pair<universe_ptr, bool> close_universe( std::shared_ptr<const residuated_lattice> L, std::size_t n,
                                              std::vector<tfilter> seeds, Unary unary, Binary binary,
                                              std::size_t rounds, std::size_t cap )
{
    std::vector<tfilter> cur = std::move( seeds );
    for ( std::size_t x = 0; x < n; ++x )
        cur.push_back( point_filter( *L, n, x ) );
    std::sort( cur.begin(), cur.end() );
    cur.erase( std::unique( cur.begin(), cur.end() ), cur.end() );
    bool fixpoint = false;
    for ( std::size_t r = 0; r < rounds && !fixpoint; ++r )
    {
        std::vector<tfilter> next = cur;
        for ( const auto& F : cur )
            unary( F, next );
        for ( const auto& F : cur )
            for ( const auto& H : cur )
                binary( F, H, next );
        std::sort( next.begin(), next.end() );
        next.erase( std::unique( next.begin(), next.end() ), next.end() );
        fixpoint = next.size() == cur.size();
        if ( next.size() > cap )
            break;
        cur = std::move( next );
    }
    return { make_universe( std::move( L ), n, std::move( cur ) ), fixpoint };
}

} // namespace tconv
