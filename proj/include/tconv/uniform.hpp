#pragma once

#include "convergence.hpp"

#include <memory>
#include <string>
#include <vector>

namespace tconv
{

// Membership set of filters on X x X, over an explicit universe on the
// product carrier.
class uniform_structure
{
    universe_ptr _universe;
    std::shared_ptr<const finite_group> _group;
    std::vector<std::uint8_t> _members;
    std::size_t _points = 0;

public:
    uniform_structure( universe_ptr U, std::shared_ptr<const finite_group> G = nullptr )
            : _universe{ std::move( U ) }, _group{ std::move( G ) }
    {
        _points = detail::side_of_square( _universe->domain() );
        if ( _group && _group->size() != _points )
            throw error( error_kind::domain_mismatch, "group does not match the square carrier" );
        _members.assign( _universe->size(), 0 );
    }

    [[nodiscard]] const filter_universe& universe() const { return *_universe; }
    [[nodiscard]] const universe_ptr& universe_ptr_() const { return _universe; }
    [[nodiscard]] const residuated_lattice& lattice() const { return _universe->lattice(); }
    [[nodiscard]] const finite_group* group() const { return _group.get(); }
    [[nodiscard]] std::size_t points() const { return _points; }
    [[nodiscard]] bool contains( std::size_t f ) const { return _members[ f ] != 0; }
    void set( std::size_t f, bool v = true ) { _members[ f ] = v; }

    [[nodiscard]] std::size_t count() const
    {
        std::size_t c = 0;
        for ( auto v : _members )
            c += v;
        return c;
    }

    friend bool operator==( const uniform_structure& l, const uniform_structure& r )
    {
        return l._universe == r._universe && l._members == r._members;
    }
};

inline std::size_t diagonal_point( std::size_t n, std::size_t x ) { return pair_index( x, x, n ); }

struct tuc_report
{
    check_result tuc1; // diagonal point filters
    check_result tuc2; // up-closure
    check_result tuc3; // existing compositions
    check_result tuc4; // transposes
    check_result limit; // intersections; labelled TUC5-limit

    [[nodiscard]] bool uniform() const { return tuc1.holds && tuc2.holds && tuc3.holds && tuc4.holds; }
};

inline tuc_report check_tuc( const uniform_structure& P )
{
    const auto& U = P.universe();
    const auto& L = P.lattice();
    const auto n = P.points();
    const bool rel = !U.complete();
    auto name = [ & ]( std::size_t f ) { return describe( L, U[ f ] ); };
    tuc_report r;
    r.tuc1.relative = r.tuc2.relative = r.tuc3.relative = r.tuc4.relative = r.limit.relative = rel;

    for ( std::size_t x = 0; x < n && r.tuc1.holds; ++x )
    {
        const auto d = U.point( diagonal_point( n, x ) );
        if ( !P.contains( d ) )
            r.tuc1 = check_result::fail( "diagonal point filter " + name( d ) + " missing" );
    }
    for ( std::size_t f = 0; f < U.size() && r.tuc2.holds; ++f )
        for ( std::size_t g = 0; g < U.size(); ++g )
            if ( P.contains( f ) && U.contained( f, g ) && !P.contains( g ) )
            {
                r.tuc2 = check_result::fail( "F=" + name( f ) + " in the structure but the larger G=" + name( g ) +
                                             " is not" );
                break;
            }

    std::size_t undecided = 0;
    for ( std::size_t f = 0; f < U.size(); ++f )
    {
        if ( !P.contains( f ) )
            continue;
        if ( auto t = U.find( transpose_filter( L, U[ f ] ) ) )
        {
            if ( !P.contains( *t ) && r.tuc4.holds )
                r.tuc4 = check_result::fail( "F=" + name( f ) + " in the structure but its transpose " + name( *t ) +
                                             " is not" );
        }
        else if ( r.tuc4.holds )
            r.tuc4 = { false, "transpose of " + name( f ) + " is outside the universe", true, "closure-insufficient" };

        for ( std::size_t g = 0; g < U.size(); ++g )
        {
            if ( !P.contains( g ) )
                continue;
            if ( auto h = U.find( intersect_filter( L, U[ f ], U[ g ] ) ) )
            {
                if ( !P.contains( *h ) && r.limit.holds )
                    r.limit = check_result::fail( "intersection of " + name( f ) + " and " + name( g ) +
                                                  " is missing" );
            }
            else
                ++undecided;
            if ( !r.tuc3.holds || !compose_exists( L, U[ f ], U[ g ] ) )
                continue;
            const auto c = compose_filter( L, U[ f ], U[ g ] );
            const auto h = U.find( c );
            if ( !h )
            {
                ++undecided;
                continue;
            }
            if ( !P.contains( *h ) )
            {
                r.tuc3 = check_result::fail( "F=" + name( f ) + " G=" + name( g ) + " but F o G=" + name( *h ) +
                                             " is missing" );
            }
        }
    }
    if ( undecided )
    {
        r.tuc3.relative = r.limit.relative = true;
        r.tuc3.note = std::to_string( undecided ) + " compositions or intersections outside the universe";
    }
    r.tuc1.relative = false;
    return r;
}

// Universe on X x X for the uniform side. Complete when |L|^(n^2) fits the
// budget; otherwise generated from lifts, products [x] x F and diagonal
// points, closed under transpose, intersection and existing compositions
// for `rounds` rounds, capped at `cap` filters. `extra` joins the seeds.
inline universe_ptr uniform_universe( const convergence_structure& C, std::size_t budget, std::size_t rounds,
                                      std::size_t cap = 4096, std::vector<tfilter> extra = {} )
{
    const auto& G = detail::require_group( C );
    const auto& UX = C.universe();
    const auto& L = UX.lattice();
    const auto n = C.points();
    if ( fuzzy_space_within( L, n * n, budget ) )
        return complete_universe( UX.lattice_ptr(), n * n, budget );
    std::vector<tfilter> seeds = std::move( extra );
    for ( const auto& F : UX.filters() )
    {
        seeds.push_back( lift_filter( L, G, F ) );
        for ( std::size_t x = 0; x < n; ++x )
            seeds.push_back( product_filter( L, point_filter( L, n, x ), F ) );
    }
    auto unary = [ & ]( const tfilter& F, std::vector<tfilter>& out ) { out.push_back( transpose_filter( L, F ) ); };
    auto binary = [ & ]( const tfilter& F, const tfilter& H, std::vector<tfilter>& out ) {
        out.push_back( intersect_filter( L, F, H ) );
        if ( compose_exists( L, F, H ) )
            out.push_back( compose_filter( L, F, H ) );
    };
    auto closed = close_universe( UX.lattice_ptr(), n * n, std::move( seeds ), unary, binary, rounds, cap ).first;
    // transpose is an involution, so one extra pass closes the result under it
    auto filters = closed->filters();
    for ( const auto& F : closed->filters() )
        filters.push_back( transpose_filter( L, F ) );
    return make_universe( UX.lattice_ptr(), n * n, std::move( filters ) );
}

// F in Phi^C iff some G -> e has G_l inside F.
inline uniform_structure phi_from_group( const convergence_structure& C, universe_ptr UXX )
{
    const auto& G = detail::require_group( C );
    const auto& L = C.lattice();
    uniform_structure P( std::move( UXX ), C.group_ptr() );
    std::vector<tfilter> lifts;
    for ( std::size_t g = 0; g < C.universe().size(); ++g )
        if ( C.converges( g, G.identity() ) )
            lifts.push_back( lift_filter( L, G, C.universe()[ g ] ) );
    const auto& U = P.universe();
    for ( std::size_t f = 0; f < U.size(); ++f )
        for ( const auto& l : lifts )
            if ( filter_leq( L, l, U[ f ] ) )
            {
                P.set( f );
                break;
            }
    return P;
}

// F -> x iff [x] x F in Phi. Throws closure_insufficient when a product
// filter is outside Phi's universe.
inline convergence_structure conv_from_phi( const uniform_structure& P, universe_ptr UX )
{
    const auto n = P.points();
    if ( UX->domain() != n )
        throw error( error_kind::domain_mismatch, "universe carrier differs from the uniform carrier" );
    convergence_structure C( std::move( UX ), P.group() ? std::make_shared<const finite_group>( *P.group() ) : nullptr );
    const auto& L = P.lattice();
    for ( std::size_t f = 0; f < C.universe().size(); ++f )
        for ( std::size_t x = 0; x < n; ++x )
        {
            const auto k = P.universe().index_of( product_filter( L, point_filter( L, n, x ), C.universe()[ f ] ) );
            C.set( f, x, P.contains( k ) );
        }
    return C;
}

// G_l inside [x] x F  iff  [x].G inside F, for every G, F in the universe and x.
inline check_result lift_point_lemma_check( const filter_universe& U, const finite_group& G )
{
    const auto& L = U.lattice();
    const auto n = U.domain();
    for ( const auto& g : U.filters() )
    {
        const auto lifted = lift_filter( L, G, g );
        for ( std::size_t x = 0; x < n; ++x )
        {
            const auto translated = odot_filter( L, G, point_filter( L, n, x ), g );
            for ( const auto& f : U.filters() )
            {
                const bool left = filter_leq( L, lifted, product_filter( L, point_filter( L, n, x ), f ) );
                const bool right = filter_leq( L, translated, f );
                if ( left != right )
                    return check_result::fail( "G=" + describe( L, g ) + " F=" + describe( L, f ) +
                                               " x=" + G.name( x ) + ": lift side " + ( left ? "yes" : "no" ) +
                                               ", translate side " + ( right ? "yes" : "no" ) );
            }
        }
    }
    return { true, {}, !U.complete(), {} };
}

// C equals C_{Phi^C} as relations over C's universe.
inline check_result uniformization_check( const convergence_structure& C, universe_ptr UXX )
{
    const auto P = phi_from_group( C, UXX );
    const auto back = conv_from_phi( P, C.universe_ptr_() );
    for ( std::size_t f = 0; f < C.universe().size(); ++f )
        for ( std::size_t x = 0; x < C.points(); ++x )
            if ( C.converges( f, x ) != back.converges( f, x ) )
                return check_result::fail( C.describe_pair( f, x ) + ": original " +
                                           ( C.converges( f, x ) ? "converges" : "does not converge" ) +
                                           ", reconstructed " +
                                           ( back.converges( f, x ) ? "converges" : "does not converge" ) );
    return { true, {}, !C.universe().complete() || !UXX->complete(), {} };
}

} // namespace tconv
