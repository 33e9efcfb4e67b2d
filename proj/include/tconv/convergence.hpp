#pragma once

#include "universe.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tconv
{

// Relation "filter converges to point" over an explicit filter universe,
// optionally on a group carrier.
class convergence_structure
{
    universe_ptr _universe;
    std::shared_ptr<const finite_group> _group;
    std::vector<std::uint8_t> _rel; // [filter * points + point]
    std::vector<std::string> _point_names;

public:
    convergence_structure( universe_ptr U, std::shared_ptr<const finite_group> G = nullptr )
            : _universe{ std::move( U ) }, _group{ std::move( G ) }
    {
        if ( _group && _group->size() != _universe->domain() )
            throw error( error_kind::domain_mismatch, "group and universe carriers differ" );
        _rel.assign( _universe->size() * _universe->domain(), 0 );
        for ( std::size_t x = 0; x < points(); ++x )
            _point_names.push_back( _group ? _group->name( x ) : "x" + std::to_string( x ) );
    }

    [[nodiscard]] const filter_universe& universe() const { return *_universe; }
    [[nodiscard]] const universe_ptr& universe_ptr_() const { return _universe; }
    [[nodiscard]] const residuated_lattice& lattice() const { return _universe->lattice(); }
    [[nodiscard]] const finite_group* group() const { return _group.get(); }
    [[nodiscard]] const std::shared_ptr<const finite_group>& group_ptr() const { return _group; }
    [[nodiscard]] std::size_t points() const { return _universe->domain(); }

    [[nodiscard]] bool converges( std::size_t f, std::size_t x ) const { return _rel[ f * points() + x ] != 0; }
    void set( std::size_t f, std::size_t x, bool v = true ) { _rel[ f * points() + x ] = v; }

    void set_point_names( std::vector<std::string> names )
    {
        if ( names.size() == points() )
            _point_names = std::move( names );
    }
    [[nodiscard]] const std::string& point_name( std::size_t x ) const { return _point_names[ x ]; }

    [[nodiscard]] std::string describe_pair( std::size_t f, std::size_t x ) const
    {
        return "F=" + describe( lattice(), ( *_universe )[ f ] ) + " x=" + point_name( x );
    }

    [[nodiscard]] std::size_t pair_count() const
    {
        std::size_t c = 0;
        for ( auto v : _rel )
            c += v;
        return c;
    }

    friend bool operator==( const convergence_structure& l, const convergence_structure& r )
    {
        return l._universe == r._universe && l._rel == r._rel;
    }
};

// ---------------------------------------------------------------------------
// Axioms and classification

inline check_result check_tc1( const convergence_structure& C )
{
    for ( std::size_t x = 0; x < C.points(); ++x )
        if ( !C.converges( C.universe().point( x ), x ) )
            return check_result::fail( "point filter does not converge: " +
                                       C.describe_pair( C.universe().point( x ), x ) );
    return {};
}

inline check_result check_tc2( const convergence_structure& C )
{
    const auto& U = C.universe();
    for ( std::size_t f = 0; f < U.size(); ++f )
        for ( std::size_t g = 0; g < U.size(); ++g )
            if ( f != g && U.contained( f, g ) )
                for ( std::size_t x = 0; x < C.points(); ++x )
                    if ( C.converges( f, x ) && !C.converges( g, x ) )
                        return check_result::fail( C.describe_pair( f, x ) + " converges but the larger G=" +
                                                   describe( C.lattice(), U[ g ] ) + " does not" );
    return { true, {}, !U.complete(), {} };
}

// LT: F, G -> x implies F cap G -> x. Throws closure_insufficient when an
// intersection lies outside the universe.
inline check_result check_lt( const convergence_structure& C )
{
    const auto& U = C.universe();
    for ( std::size_t f = 0; f < U.size(); ++f )
        for ( std::size_t g = f + 1; g < U.size(); ++g )
        {
            const auto h = U.index_of( intersect_filter( C.lattice(), U[ f ], U[ g ] ) );
            for ( std::size_t x = 0; x < C.points(); ++x )
                if ( C.converges( f, x ) && C.converges( g, x ) && !C.converges( h, x ) )
                    return check_result::fail( "intersection of " + describe( C.lattice(), U[ f ] ) + " and " +
                                               describe( C.lattice(), U[ g ] ) + " does not converge to " +
                                               C.point_name( x ) );
        }
    return { true, {}, !U.complete(), {} };
}

// U_x: intersection of every universe filter converging to x.
inline tfilter ux( const convergence_structure& C, std::size_t x )
{
    const auto& U = C.universe();
    std::optional<tfilter> acc;
    for ( std::size_t f = 0; f < U.size(); ++f )
        if ( C.converges( f, x ) )
            acc = acc ? intersect_filter( C.lattice(), *acc, U[ f ] ) : U[ f ];
    if ( !acc )
        throw error( error_kind::invalid_parameter, "no filter converges to " + C.point_name( x ) );
    return *acc;
}

inline check_result check_pt( const convergence_structure& C )
{
    for ( std::size_t x = 0; x < C.points(); ++x )
    {
        const auto u = ux( C, x );
        const auto idx = C.universe().find( u );
        if ( !idx )
            return { false, "U_" + C.point_name( x ) + "=" + describe( C.lattice(), u ) + " is not in the universe",
                     true, "closure-insufficient" };
        if ( !C.converges( *idx, x ) )
            return check_result::fail( "U_x does not converge: " + C.describe_pair( *idx, x ) );
    }
    return { true, {}, !C.universe().complete(), {} };
}

// lambda*(x) = join over mu in U_x of S(mu, lambda), evaluated on the base of
// U_x (the join over a filter equals the join over any of its bases).
inline fuzzy_set lambda_star( const convergence_structure& C, const fuzzy_set& lambda )
{
    const auto& L = C.lattice();
    detail::require_domain( lambda, C.points() );
    fuzzy_set out( C.points(), L.bot() );
    for ( std::size_t x = 0; x < C.points(); ++x )
    {
        const auto u = ux( C, x );
        lat acc = L.bot();
        for ( const auto& m : u.base() )
            acc = L.join( acc, subsethood( L, m, lambda ) );
        out[ x ] = acc;
    }
    return out;
}

// The proof's explicit local candidate: lambda_y(z) = lambda*(y) -> lambda(z).
inline fuzzy_set local_candidate( const residuated_lattice& L, const fuzzy_set& star, const fuzzy_set& lambda,
                                  std::size_t y )
{
    fuzzy_set out( lambda.size(), L.bot() );
    for ( std::size_t z = 0; z < lambda.size(); ++z )
        out[ z ] = L.arrow( star[ y ], lambda[ z ] );
    return out;
}

struct tt_report
{
    check_result result;
    // Candidate family that witnessed the existentials: "explicit", "base"
    // or "exhaustive" (per first witness found); empty when nothing checked.
    std::vector<std::string> witnessed_by;
    bool exhaustive_outer = false;
};

// TT: for every x and lambda in U_x there is lambda' in U_x below lambda and,
// for every z, some lambda_z in U_z with lambda'(z) <= S(lambda_z, lambda).
// Outer lambdas range over all members of U_x when |L|^|X| <= budget, else
// over the base. Inner candidates: the explicit ones from lambda*, the base
// members, and (within budget) every member.
inline tt_report tt_check( const convergence_structure& C, std::size_t budget )
{
    if ( auto pt = check_pt( C ); !pt.holds )
        throw error( error_kind::not_pretopological, pt.witness );
    const auto& L = C.lattice();
    const auto n = C.points();
    const bool within = fuzzy_space_within( L, n, budget );
    std::vector<tfilter> u;
    for ( std::size_t x = 0; x < n; ++x )
        u.push_back( ux( C, x ) );
    std::vector<std::vector<fuzzy_set>> members( n );
    if ( within )
        for ( std::size_t x = 0; x < n; ++x )
            members[ x ] = materialize( L, u[ x ], budget );

    tt_report rep;
    rep.exhaustive_outer = within;
    rep.result.relative = !C.universe().complete();
    std::vector<std::string> families;

    for ( std::size_t x = 0; x < n; ++x )
    {
        const auto& outer = within ? members[ x ] : u[ x ].base();
        for ( const auto& lambda : outer )
        {
            const auto star = lambda_star( C, lambda );
            using cand = std::pair<fuzzy_set, std::string>;
            std::vector<cand> candidates{ { star, "explicit" } };
            for ( const auto& b : u[ x ].base() )
                candidates.emplace_back( b, "base" );
            if ( within )
                for ( const auto& m : members[ x ] )
                    candidates.emplace_back( m, "exhaustive" );

            std::optional<std::string> found;
            for ( const auto& [ c, family ] : candidates )
            {
                if ( !member( L, u[ x ], c ) || !leq( L, c, lambda ) )
                    continue;
                bool all_z = true;
                for ( std::size_t z = 0; z < n && all_z; ++z )
                {
                    std::vector<fuzzy_set> locals{ local_candidate( L, star, lambda, z ) };
                    for ( const auto& b : u[ z ].base() )
                        locals.push_back( b );
                    if ( within )
                        locals.insert( locals.end(), members[ z ].begin(), members[ z ].end() );
                    bool some = false;
                    for ( const auto& lz : locals )
                        if ( member( L, u[ z ], lz ) && L.leq( c[ z ], subsethood( L, lz, lambda ) ) )
                        {
                            some = true;
                            break;
                        }
                    all_z = some;
                }
                if ( all_z )
                {
                    found = family;
                    break;
                }
            }
            if ( !found )
            {
                rep.result.holds = false;
                rep.result.witness = "x=" + C.point_name( x ) + " lambda=" + describe( L, lambda ) +
                                     " lambda*=" + describe( L, star );
                return rep;
            }
            if ( std::find( families.begin(), families.end(), *found ) == families.end() )
                families.push_back( *found );
        }
    }
    rep.witnessed_by = families;
    return rep;
}

struct classification
{
    check_result convergence; // TC1 and TC2
    check_result limit;       // LT
    check_result pretopological;
    check_result topological;
    std::vector<std::string> tt_witnessed_by;

    [[nodiscard]] bool relative() const
    {
        return convergence.relative || limit.relative || pretopological.relative || topological.relative;
    }
};

inline classification classify( const convergence_structure& C, std::size_t budget )
{
    classification out;
    out.convergence = check_tc1( C );
    if ( out.convergence.holds )
        out.convergence = check_tc2( C );
    try
    {
        out.limit = check_lt( C );
    }
    catch ( const error& e )
    {
        out.limit = { false, e.what(), true, "closure-insufficient" };
    }
    out.pretopological = check_pt( C );
    if ( !out.pretopological.holds )
        out.topological = check_result::fail( "not pretopological" );
    else
    {
        auto tt = tt_check( C, budget );
        out.topological = tt.result;
        out.tt_witnessed_by = tt.witnessed_by;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Constructions

inline convergence_structure discrete_structure( universe_ptr U, std::shared_ptr<const finite_group> G = nullptr )
{
    convergence_structure C( std::move( U ), std::move( G ) );
    const auto& V = C.universe();
    for ( std::size_t x = 0; x < C.points(); ++x )
        for ( std::size_t f = 0; f < V.size(); ++f )
            C.set( f, x, V.contained( V.point( x ), f ) );
    return C;
}

inline convergence_structure indiscrete_structure( universe_ptr U, std::shared_ptr<const finite_group> G = nullptr )
{
    convergence_structure C( std::move( U ), std::move( G ) );
    for ( std::size_t x = 0; x < C.points(); ++x )
        for ( std::size_t f = 0; f < C.universe().size(); ++f )
            C.set( f, x );
    return C;
}

// Index of f=>(F) in the target universe for every filter of the source
// universe; throws image_not_in_universe.
inline std::vector<std::size_t> image_indices( const finite_map& f, const filter_universe& src,
                                               const filter_universe& dst )
{
    std::vector<std::size_t> out;
    out.reserve( src.size() );
    for ( const auto& F : src.filters() )
        out.push_back( dst.index_of( image_filter( src.lattice(), f, F ), error_kind::image_not_in_universe ) );
    return out;
}

struct source_map
{
    finite_map map;
    const convergence_structure* target;
};

// F -> x iff f_j=>(F) -> f_j(x) for every j. An empty family gives the
// indiscrete structure.
inline convergence_structure initial_structure( const std::vector<source_map>& sources, universe_ptr U,
                                                std::shared_ptr<const finite_group> G = nullptr )
{
    convergence_structure C( std::move( U ), std::move( G ) );
    const auto& V = C.universe();
    std::vector<std::vector<std::size_t>> images;
    for ( const auto& s : sources )
    {
        if ( s.map.source_size != V.domain() || s.map.target_size != s.target->points() )
            throw error( error_kind::domain_mismatch, "source map does not match the carriers" );
        images.push_back( image_indices( s.map, V, s.target->universe() ) );
    }
    for ( std::size_t f = 0; f < V.size(); ++f )
        for ( std::size_t x = 0; x < C.points(); ++x )
        {
            bool all = true;
            for ( std::size_t j = 0; j < sources.size() && all; ++j )
                all = sources[ j ].target->converges( images[ j ][ f ], sources[ j ].map( x ) );
            C.set( f, x, all );
        }
    return C;
}

// Product space of C1 and C2 over a universe on the product carrier.
inline convergence_structure product_structure( const convergence_structure& C1, const convergence_structure& C2,
                                                universe_ptr U12 )
{
    const auto n1 = C1.points(), n2 = C2.points();
    if ( U12->domain() != n1 * n2 )
        throw error( error_kind::domain_mismatch, "product universe has the wrong carrier" );
    auto C = initial_structure( { { projection1( n1, n2 ), &C1 }, { projection2( n1, n2 ), &C2 } }, std::move( U12 ) );
    std::vector<std::string> names;
    for ( std::size_t a = 0; a < n1; ++a )
        for ( std::size_t b = 0; b < n2; ++b )
            names.push_back( "(" + C1.point_name( a ) + "," + C2.point_name( b ) + ")" );
    C.set_point_names( std::move( names ) );
    return C;
}

inline convergence_structure product_structure( const convergence_structure& C, universe_ptr U2 )
{
    return product_structure( C, C, std::move( U2 ) );
}

// Universe on the product carrier: the complete one when |L|^(n1 n2) is within
// budget, else all products F x G of the factor universes.
inline universe_ptr product_universe( const filter_universe& U1, const filter_universe& U2, std::size_t budget )
{
    const auto n = U1.domain() * U2.domain();
    if ( fuzzy_space_within( U1.lattice(), n, budget ) )
        return complete_universe( U1.lattice_ptr(), n, budget );
    std::vector<tfilter> fs;
    for ( const auto& F : U1.filters() )
        for ( const auto& G : U2.filters() )
            fs.push_back( product_filter( U1.lattice(), F, G ) );
    return make_universe( U1.lattice_ptr(), n, std::move( fs ) );
}

// f continuous: F -> x implies f=>(F) -> f(x). Throws image_not_in_universe.
inline check_result continuous( const finite_map& f, const convergence_structure& CX,
                                const convergence_structure& CY )
{
    if ( f.source_size != CX.points() || f.target_size != CY.points() )
        throw error( error_kind::domain_mismatch, "map does not match the carriers" );
    const auto img = image_indices( f, CX.universe(), CY.universe() );
    for ( std::size_t F = 0; F < CX.universe().size(); ++F )
        for ( std::size_t x = 0; x < CX.points(); ++x )
            if ( CX.converges( F, x ) && !CY.converges( img[ F ], f( x ) ) )
                return check_result::fail( CX.describe_pair( F, x ) + " but f=>(F)=" +
                                           describe( CY.lattice(), CY.universe()[ img[ F ] ] ) +
                                           " does not converge to " + CY.point_name( f( x ) ) );
    return { true, {}, !CX.universe().complete(), {} };
}

// ---------------------------------------------------------------------------
// Group structures

namespace detail
{

inline const finite_group& require_group( const convergence_structure& C )
{
    if ( !C.group() )
        throw error( error_kind::invalid_parameter, "structure has no group" );
    return *C.group();
}

} // namespace detail

// Precomputed odot/inverse indices over a universe closed under both.
struct group_tables
{
    std::vector<std::size_t> odot; // [f * m + g]
    std::vector<std::size_t> inverse;
    std::size_t m = 0;

    group_tables( const filter_universe& U, const finite_group& G ) : m{ U.size() }
    {
        const auto& L = U.lattice();
        odot.resize( m * m );
        for ( std::size_t f = 0; f < m; ++f )
        {
            inverse.push_back( U.index_of( inverse_filter( L, G, U[ f ] ) ) );
            for ( std::size_t g = 0; g < m; ++g )
                odot[ f * m + g ] = U.index_of( odot_filter( L, G, U[ f ], U[ g ] ) );
        }
    }
};

// TCG1 and TCG2 on the universe.
inline check_result is_group_by_tcg( const convergence_structure& C, const group_tables& T )
{
    const auto& G = detail::require_group( C );
    const auto& U = C.universe();
    for ( std::size_t f = 0; f < U.size(); ++f )
        for ( std::size_t x = 0; x < C.points(); ++x )
        {
            if ( !C.converges( f, x ) )
                continue;
            if ( !C.converges( T.inverse[ f ], G.inv( x ) ) )
                return check_result::fail( "TCG2: " + C.describe_pair( f, x ) + " but the inverse does not converge to " +
                                           C.point_name( G.inv( x ) ) );
            for ( std::size_t g = 0; g < U.size(); ++g )
                for ( std::size_t y = 0; y < C.points(); ++y )
                    if ( C.converges( g, y ) && !C.converges( T.odot[ f * T.m + g ], G.mul( x, y ) ) )
                        return check_result::fail( "TCG1: " + C.describe_pair( f, x ) + " and G=" +
                                                   describe( C.lattice(), U[ g ] ) + " y=" + C.point_name( y ) +
                                                   " but F.G does not converge to " +
                                                   C.point_name( G.mul( x, y ) ) );
        }
    return { true, {}, !U.complete(), {} };
}

inline check_result is_group_by_tcg( const convergence_structure& C )
{
    return is_group_by_tcg( C, group_tables( C.universe(), detail::require_group( C ) ) );
}

// Precomputed projection, multiplication and inversion images for the
// operations route.
struct operation_tables
{
    universe_ptr product;
    std::vector<std::size_t> p1, p2, mul, inv;

    operation_tables( const filter_universe& U, const finite_group& G, universe_ptr UXX )
            : product{ std::move( UXX ) }
    {
        const auto n = G.size();
        p1 = image_indices( projection1( n, n ), *product, U );
        p2 = image_indices( projection2( n, n ), *product, U );
        mul = image_indices( multiplication_map( G ), *product, U );
        inv = image_indices( inversion_map( G ), U, U );
    }
};

// Continuity of m : (X x X, C x C) -> (X, C) and r : (X, C) -> (X, C).
inline check_result is_group_by_operations( const convergence_structure& C, const operation_tables& T )
{
    const auto& G = detail::require_group( C );
    const auto& U = C.universe();
    const auto n = C.points();
    for ( std::size_t f = 0; f < U.size(); ++f )
        for ( std::size_t x = 0; x < n; ++x )
            if ( C.converges( f, x ) && !C.converges( T.inv[ f ], G.inv( x ) ) )
                return check_result::fail( "r not continuous at " + C.describe_pair( f, x ) );
    const auto& P = *T.product;
    for ( std::size_t k = 0; k < P.size(); ++k )
        for ( std::size_t x1 = 0; x1 < n; ++x1 )
        {
            if ( !C.converges( T.p1[ k ], x1 ) )
                continue;
            for ( std::size_t x2 = 0; x2 < n; ++x2 )
                if ( C.converges( T.p2[ k ], x2 ) && !C.converges( T.mul[ k ], G.mul( x1, x2 ) ) )
                    return check_result::fail( "m not continuous at K=" + describe( C.lattice(), P[ k ] ) + " (" +
                                               C.point_name( x1 ) + "," + C.point_name( x2 ) + ")" );
        }
    return { true, {}, !U.complete() || !P.complete(), {} };
}

inline check_result is_group_by_operations( const convergence_structure& C, universe_ptr UXX )
{
    return is_group_by_operations( C, operation_tables( C.universe(), detail::require_group( C ), std::move( UXX ) ) );
}

// F -> x  iff  [x^-1].F -> e  iff  F.[x^-1] -> e, for every pair.
inline check_result localization_check( const convergence_structure& C, const group_tables& T )
{
    const auto& G = detail::require_group( C );
    const auto& U = C.universe();
    const auto e = G.identity();
    for ( std::size_t f = 0; f < U.size(); ++f )
        for ( std::size_t x = 0; x < C.points(); ++x )
        {
            const auto p = U.point( G.inv( x ) );
            const bool direct = C.converges( f, x );
            const bool left = C.converges( T.odot[ p * T.m + f ], e );
            const bool right = C.converges( T.odot[ f * T.m + p ], e );
            if ( direct != left || direct != right )
                return check_result::fail( C.describe_pair( f, x ) + ": F->x=" + ( direct ? "yes" : "no" ) +
                                           " [x^-1].F->e=" + ( left ? "yes" : "no" ) +
                                           " F.[x^-1]->e=" + ( right ? "yes" : "no" ) );
        }
    return { true, {}, !U.complete(), {} };
}

inline check_result localization_check( const convergence_structure& C )
{
    return localization_check( C, group_tables( C.universe(), detail::require_group( C ) ) );
}

namespace detail
{

// Every up-set of the universe (ordered by containment) that contains `must`.
inline std::vector<std::vector<std::uint8_t>> upsets_containing( const filter_universe& U, std::size_t must,
                                                                 std::size_t budget )
{
    const auto m = U.size();
    if ( m > 24 )
        throw error( error_kind::budget_exceeded, "up-set enumeration limited to 24 filters" );
    std::vector<std::vector<std::uint8_t>> out;
    for ( std::uint32_t mask = 0; mask < ( 1u << m ); ++mask )
    {
        if ( !( mask & ( 1u << must ) ) )
            continue;
        bool up = true;
        for ( std::size_t i = 0; i < m && up; ++i )
            if ( mask & ( 1u << i ) )
                for ( std::size_t j = 0; j < m && up; ++j )
                    up = !U.contained( i, j ) || ( mask & ( 1u << j ) );
        if ( !up )
            continue;
        std::vector<std::uint8_t> s( m );
        for ( std::size_t i = 0; i < m; ++i )
            s[ i ] = ( mask >> i ) & 1u;
        out.push_back( std::move( s ) );
        if ( out.size() > budget )
            throw error( error_kind::budget_exceeded, "too many up-sets" );
    }
    return out;
}

} // namespace detail

// Every relation satisfying TC1 and TC2 on the universe, in lexicographic
// order of per-point choices.
inline std::vector<convergence_structure> enumerate_convergence_structures( universe_ptr U,
                                                                            std::shared_ptr<const finite_group> G,
                                                                            std::size_t budget )
{
    const auto n = U->domain();
    std::vector<std::vector<std::vector<std::uint8_t>>> choices;
    std::size_t total = 1;
    for ( std::size_t x = 0; x < n; ++x )
    {
        choices.push_back( detail::upsets_containing( *U, U->point( x ), budget ) );
        total *= choices.back().size();
        if ( total > budget )
            throw error( error_kind::budget_exceeded, "convergence structure count exceeds budget " +
                                                              std::to_string( budget ) );
    }
    std::vector<convergence_structure> out;
    std::vector<std::size_t> pick( n, 0 );
    for ( std::size_t k = 0; k < total; ++k )
    {
        convergence_structure C( U, G );
        for ( std::size_t x = 0; x < n; ++x )
            for ( std::size_t f = 0; f < U->size(); ++f )
                C.set( f, x, choices[ x ][ pick[ x ] ][ f ] );
        out.push_back( std::move( C ) );
        for ( std::size_t x = n; x-- > 0; )
        {
            if ( ++pick[ x ] < choices[ x ].size() )
                break;
            pick[ x ] = 0;
        }
    }
    return out;
}

// Every relation satisfying TC1, TC2, TCG1, TCG2. Backtracks point by point
// and checks a group constraint as soon as all points it mentions are
// assigned; `budget` bounds the number of search nodes.
inline std::vector<convergence_structure> enumerate_group_structures( universe_ptr U,
                                                                      std::shared_ptr<const finite_group> G,
                                                                      std::size_t budget )
{
    if ( !G )
        throw error( error_kind::invalid_parameter, "group structures need a group" );
    const auto n = U->domain();
    const group_tables T( *U, *G );
    std::vector<std::vector<std::vector<std::uint8_t>>> choices;
    for ( std::size_t x = 0; x < n; ++x )
        choices.push_back( detail::upsets_containing( *U, U->point( x ), budget ) );

    std::vector<convergence_structure> out;
    std::vector<const std::vector<std::uint8_t>*> assigned( n, nullptr );
    std::size_t nodes = 0;
    const auto m = U->size();

    auto consistent = [ & ]( std::size_t upto ) {
        // Constraints whose points all lie in [0, upto] and mention upto.
        for ( std::size_t x = 0; x <= upto; ++x )
        {
            const auto xi = G->inv( x );
            if ( ( x == upto || xi == upto ) && xi <= upto )
                for ( std::size_t f = 0; f < m; ++f )
                    if ( ( *assigned[ x ] )[ f ] && !( *assigned[ xi ] )[ T.inverse[ f ] ] )
                        return false;
            for ( std::size_t y = 0; y <= upto; ++y )
            {
                const auto xy = G->mul( x, y );
                if ( xy > upto || ( x != upto && y != upto && xy != upto ) )
                    continue;
                for ( std::size_t f = 0; f < m; ++f )
                    if ( ( *assigned[ x ] )[ f ] )
                        for ( std::size_t g = 0; g < m; ++g )
                            if ( ( *assigned[ y ] )[ g ] && !( *assigned[ xy ] )[ T.odot[ f * m + g ] ] )
                                return false;
            }
        }
        return true;
    };

    std::function<void( std::size_t )> search = [ & ]( std::size_t x ) {
        if ( x == n )
        {
            convergence_structure C( U, G );
            for ( std::size_t p = 0; p < n; ++p )
                for ( std::size_t f = 0; f < m; ++f )
                    C.set( f, p, ( *assigned[ p ] )[ f ] );
            out.push_back( std::move( C ) );
            return;
        }
        for ( const auto& choice : choices[ x ] )
        {
            if ( ++nodes > budget )
                throw error( error_kind::budget_exceeded, "group structure search exceeds budget " +
                                                                  std::to_string( budget ) );
            assigned[ x ] = &choice;
            if ( consistent( x ) )
                search( x + 1 );
        }
        assigned[ x ] = nullptr;
    };
    search( 0 );
    return out;
}

} // namespace tconv
