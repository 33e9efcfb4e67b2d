#pragma once

#include "convergence.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tconv
{

// (f1 x f2)=>(F1 x F2) equals f1=>(F1) x f2=>(F2).
inline check_result lemma_cd_check( const residuated_lattice& L, const finite_map& f1, const finite_map& f2,
                                    const tfilter& F1, const tfilter& F2 )
{
    const auto left = image_filter( L, product_map( f1, f2 ), product_filter( L, F1, F2 ) );
    const auto right = product_filter( L, image_filter( L, f1, F1 ), image_filter( L, f2, F2 ) );
    if ( filter_eq( L, left, right ) )
        return {};
    return check_result::fail( "F1=" + describe( L, F1 ) + " F2=" + describe( L, F2 ) + ": image of product " +
                               describe( L, left ) + " vs product of images " + describe( L, right ) );
}

inline std::string map_name( const finite_map& f, const convergence_structure& target )
{
    std::string s = "[";
    for ( std::size_t x = 0; x < f.source_size; ++x )
        s += ( x ? "," : "" ) + target.point_name( f( x ) );
    return s + "]";
}

// C(X, Y) with its pointwise group and power structure.
struct map_space
{
    std::shared_ptr<const convergence_structure> source;
    std::shared_ptr<const convergence_structure> target;
    std::vector<finite_map> maps; // continuous maps, lexicographic by table
    std::shared_ptr<const finite_group> group;
    check_result closure; // pointwise products and inverses stay continuous
    universe_ptr map_universe;
    std::shared_ptr<const convergence_structure> structure;
    universe_ptr ev_universe; // on maps x X
    bool lattice_cd = true;

    [[nodiscard]] finite_map ev() const
    {
        const auto n = source->points();
        std::vector<std::size_t> g( maps.size() * n );
        for ( std::size_t i = 0; i < maps.size(); ++i )
            for ( std::size_t x = 0; x < n; ++x )
                g[ pair_index( i, x, n ) ] = maps[ i ]( x );
        return { target->points(), std::move( g ) };
    }

    [[nodiscard]] std::optional<std::size_t> index_of( const finite_map& f ) const
    {
        auto it = std::lower_bound( maps.begin(), maps.end(), f );
        if ( it == maps.end() || *it != f )
            return std::nullopt;
        return static_cast<std::size_t>( it - maps.begin() );
    }
};

// Builds C(X, Y). Refuses non-CD lattices unless `allow_non_cd`.
inline map_space build_power( std::shared_ptr<const convergence_structure> CX,
                              std::shared_ptr<const convergence_structure> CY, std::size_t budget,
                              std::size_t rounds, bool allow_non_cd = false )
{
    const auto& L = CX->lattice();
    if ( !( L == CY->lattice() ) )
        throw error( error_kind::domain_mismatch, "source and target use different lattices" );
    if ( !L.is_cd() && !allow_non_cd )
        throw error( error_kind::lattice_not_cd, "power objects assume the CD law; " + L.name() + " fails it" );

    map_space S;
    S.source = CX;
    S.target = CY;
    S.lattice_cd = L.is_cd();
    for ( auto& f : all_maps( CX->points(), CY->points(), budget ) )
        if ( continuous( f, *CX, *CY ).holds )
            S.maps.push_back( std::move( f ) );

    std::vector<std::string> names;
    for ( const auto& f : S.maps )
        names.push_back( map_name( f, *CY ) );

    if ( const auto* GY = CY->group() )
    {
        const auto k = S.maps.size();
        std::vector<std::size_t> cayley( k * k );
        for ( std::size_t i = 0; i < k && S.closure.holds; ++i )
        {
            std::vector<std::size_t> inv( CX->points() );
            for ( std::size_t x = 0; x < CX->points(); ++x )
                inv[ x ] = GY->inv( S.maps[ i ]( x ) );
            if ( !S.index_of( finite_map( CY->points(), inv ) ) )
                S.closure = check_result::fail( "r_Y o f not continuous for f=" + names[ i ] );
            for ( std::size_t j = 0; j < k && S.closure.holds; ++j )
            {
                std::vector<std::size_t> prod( CX->points() );
                for ( std::size_t x = 0; x < CX->points(); ++x )
                    prod[ x ] = GY->mul( S.maps[ i ]( x ), S.maps[ j ]( x ) );
                if ( auto idx = S.index_of( finite_map( CY->points(), prod ) ) )
                    cayley[ i * k + j ] = *idx;
                else
                    S.closure = check_result::fail( "f.g not continuous for f=" + names[ i ] + " g=" + names[ j ] );
            }
        }
        if ( S.closure.holds )
            S.group = std::make_shared<const finite_group>( names, std::move( cayley ), "C(X,Y)" );
    }

    const auto k = S.maps.size();
    if ( fuzzy_space_within( L, k, budget ) )
        S.map_universe = complete_universe( CX->universe().lattice_ptr(), k, budget );
    else
    {
        const auto* G = S.group.get();
        auto unary = [ & ]( const tfilter& F, std::vector<tfilter>& out ) {
            if ( G )
                out.push_back( inverse_filter( L, *G, F ) );
        };
        auto binary = [ & ]( const tfilter& F, const tfilter& H, std::vector<tfilter>& out ) {
            if ( G )
                out.push_back( odot_filter( L, *G, F, H ) );
            out.push_back( intersect_filter( L, F, H ) );
        };
        S.map_universe = close_universe( CX->universe().lattice_ptr(), k, {}, unary, binary, rounds, budget ).first;
    }

    // F -> f iff for all x and G -> x, ev=>(F x G) -> f(x)
    auto P = std::make_shared<convergence_structure>( S.map_universe, S.group );
    P->set_point_names( names );
    const auto ev = S.ev();
    const auto& UX = CX->universe();
    for ( std::size_t F = 0; F < S.map_universe->size(); ++F )
    {
        std::vector<std::size_t> img( UX.size() );
        for ( std::size_t g = 0; g < UX.size(); ++g )
            img[ g ] = CY->universe().index_of(
                    image_filter( L, ev, product_filter( L, ( *S.map_universe )[ F ], UX[ g ] ) ),
                    error_kind::image_not_in_universe );
        for ( std::size_t f = 0; f < k; ++f )
        {
            bool all = true;
            for ( std::size_t x = 0; x < CX->points() && all; ++x )
                for ( std::size_t g = 0; g < UX.size() && all; ++g )
                    if ( CX->converges( g, x ) )
                        all = CY->converges( img[ g ], S.maps[ f ]( x ) );
            P->set( F, f, all );
        }
    }
    S.structure = P;
    S.ev_universe = product_universe( *S.map_universe, UX, budget );
    return S;
}

struct named_check
{
    std::string name;
    check_result result;
};

inline check_result ev_continuity_check( const map_space& S )
{
    const auto prod = product_structure( *S.structure, *S.source, S.ev_universe );
    auto r = continuous( S.ev(), prod, *S.target );
    r.relative = true;
    return r;
}

// Group axioms, closure, the odot containment, power TC1/TC2 and TCG1/TCG2.
inline std::vector<named_check> check_power_group( const map_space& S )
{
    std::vector<named_check> out;
    const auto* GY = S.target->group();
    if ( !GY )
        throw error( error_kind::invalid_parameter, "target carries no group" );
    const auto& L = S.source->lattice();
    out.push_back( { "closure", S.closure } );
    if ( !S.group )
        return out;
    const auto& G = *S.group;

    check_result axioms;
    const auto e = constant_map( S.source->points(), S.target->points(), GY->identity() );
    const auto ei = S.index_of( e );
    if ( !ei || *ei != G.identity() )
        axioms = check_result::fail( "identity is not the constant identity map" );
    for ( std::size_t f = 0; f < G.size() && axioms.holds; ++f )
        if ( S.maps[ G.inv( f ) ] != compose( inversion_map( *GY ), S.maps[ f ] ) )
            axioms = check_result::fail( "inverse of " + G.name( f ) + " is not r_Y o f" );
    out.push_back( { "group-axioms", axioms } );

    check_result containment;
    const auto& UX = S.source->universe();
    for ( const auto& F : UX.filters() )
        for ( std::size_t f = 0; f < G.size() && containment.holds; ++f )
            for ( std::size_t g = 0; g < G.size() && containment.holds; ++g )
            {
                const auto lhs = odot_filter( L, *GY, image_filter( L, S.maps[ f ], F ),
                                              image_filter( L, S.maps[ g ], F ) );
                const auto rhs = image_filter( L, S.maps[ G.mul( f, g ) ], F );
                if ( !filter_leq( L, lhs, rhs ) )
                    containment = check_result::fail( "F=" + describe( L, F ) + " f=" + G.name( f ) +
                                                      " g=" + G.name( g ) );
            }
    containment.relative = !UX.complete();
    out.push_back( { "odot-containment", containment } );

    out.push_back( { "power-TC1", check_tc1( *S.structure ) } );
    out.push_back( { "power-TC2", check_tc2( *S.structure ) } );
    try
    {
        auto r = is_group_by_tcg( *S.structure );
        r.relative = true;
        out.push_back( { "power-TCG", r } );
    }
    catch ( const error& ex )
    {
        out.push_back( { "power-TCG", { false, ex.what(), true, "closure-insufficient" } } );
    }
    return out;
}

// m^box = m_Y o (ev x ev) o psi on all (f, g, x) and r^box = r_Y o ev on
// all (f, x).
inline check_result square_decomposition_check( const map_space& S )
{
    if ( !S.group )
        return check_result::fail( "no pointwise group" );
    const auto& G = *S.group;
    const auto& GY = *S.target->group();
    const auto n = S.source->points();
    const auto ev = S.ev();
    for ( std::size_t f = 0; f < G.size(); ++f )
        for ( std::size_t x = 0; x < n; ++x )
        {
            if ( S.maps[ G.inv( f ) ]( x ) != GY.inv( ev( pair_index( f, x, n ) ) ) )
                return check_result::fail( "r^box differs at f=" + G.name( f ) + " x=" + S.source->point_name( x ) );
            for ( std::size_t g = 0; g < G.size(); ++g )
            {
                const auto box = S.maps[ G.mul( f, g ) ]( x );
                const auto square = GY.mul( ev( pair_index( f, x, n ) ), ev( pair_index( g, x, n ) ) );
                if ( box != square )
                    return check_result::fail( "m^box differs at f=" + G.name( f ) + " g=" + G.name( g ) +
                                               " x=" + S.source->point_name( x ) );
            }
        }
    return {};
}

// Witness that ev : C(X,Y) x X -> Y is not a homomorphism of the product
// group, when the source carries a group; empty when it is one here.
inline std::optional<std::string> ev_homomorphism_failure( const map_space& S )
{
    const auto* GX = S.source->group();
    if ( !S.group || !GX )
        return std::nullopt;
    const auto P = direct_product( *S.group, *GX );
    const auto ev = S.ev();
    for ( std::size_t a = 0; a < P.size(); ++a )
        for ( std::size_t b = 0; b < P.size(); ++b )
            if ( ev( P.mul( a, b ) ) != S.target->group()->mul( ev( a ), ev( b ) ) )
                return "ev(" + P.name( a ) + " " + P.name( b ) + ") differs from ev(" + P.name( a ) + ") ev(" +
                       P.name( b ) + ")";
    return std::nullopt;
}

struct transpose_report
{
    std::vector<named_check> checks;
    std::optional<finite_map> diamond; // Z -> map indices
    std::size_t scanned = 0;
    std::size_t satisfying = 0;
};

// phi : Z x X -> Y continuous for the product structure; checks that
// z |-> phi(z, -) is the unique continuous map with ev o (diamond x id) = phi.
inline transpose_report transpose_check( const finite_map& phi, const convergence_structure& CZ, const map_space& S,
                                         std::size_t budget )
{
    const auto nz = CZ.points(), nx = S.source->points();
    if ( phi.source_size != nz * nx || phi.target_size != S.target->points() )
        throw error( error_kind::domain_mismatch, "phi must map Z x X to Y" );
    const auto UZX = product_universe( CZ.universe(), S.source->universe(), budget );
    const auto CZX = product_structure( CZ, *S.source, UZX );
    if ( auto c = continuous( phi, CZX, *S.target ); !c.holds )
        throw error( error_kind::not_continuous, "phi is not continuous: " + c.witness );

    transpose_report rep;
    const auto& power = *S.structure;
    std::vector<std::size_t> diamond( nz );
    check_result rows;
    for ( std::size_t z = 0; z < nz && rows.holds; ++z )
    {
        std::vector<std::size_t> row( nx );
        for ( std::size_t x = 0; x < nx; ++x )
            row[ x ] = phi( pair_index( z, x, nx ) );
        if ( auto idx = S.index_of( finite_map( S.target->points(), row ) ) )
            diamond[ z ] = *idx;
        else
            rows = check_result::fail( "phi(" + CZ.point_name( z ) + ",-) is not continuous" );
    }
    rep.checks.push_back( { "rows-continuous", rows } );
    if ( !rows.holds )
        return rep;
    rep.diamond = finite_map( S.maps.size(), diamond );

    auto d = continuous( *rep.diamond, CZ, power );
    d.relative = true;
    rep.checks.push_back( { "diamond-continuous", d } );

    const auto ev = S.ev();
    auto identity_holds = [ & ]( const finite_map& psi ) {
        for ( std::size_t z = 0; z < nz; ++z )
            for ( std::size_t x = 0; x < nx; ++x )
                if ( ev( pair_index( psi( z ), x, nx ) ) != phi( pair_index( z, x, nx ) ) )
                    return false;
        return true;
    };
    rep.checks.push_back( { "composition-identity", identity_holds( *rep.diamond )
                                                            ? check_result{}
                                                            : check_result::fail( "ev o (diamond x id) != phi" ) } );

    for ( const auto& psi : all_maps( nz, S.maps.size(), budget ) )
    {
        ++rep.scanned;
        if ( identity_holds( psi ) && continuous( psi, CZ, power ).holds )
            ++rep.satisfying;
    }
    rep.checks.push_back( { "uniqueness", rep.satisfying == 1 ? check_result{}
                                                              : check_result::fail(
                                                                        std::to_string( rep.satisfying ) +
                                                                        " maps satisfy the identity" ) } );
    return rep;
}

// For every psi : Z -> C(X,Y): psi^box continuous implies psi continuous.
inline check_result box_converse_check( const convergence_structure& CZ, const map_space& S, std::size_t budget )
{
    const auto nz = CZ.points(), nx = S.source->points();
    const auto UZX = product_universe( CZ.universe(), S.source->universe(), budget );
    const auto CZX = product_structure( CZ, *S.source, UZX );
    for ( const auto& psi : all_maps( nz, S.maps.size(), budget ) )
    {
        std::vector<std::size_t> box( nz * nx );
        for ( std::size_t z = 0; z < nz; ++z )
            for ( std::size_t x = 0; x < nx; ++x )
                box[ pair_index( z, x, nx ) ] = S.maps[ psi( z ) ]( x );
        if ( !continuous( finite_map( S.target->points(), box ), CZX, *S.target ).holds )
            continue;
        if ( auto c = continuous( psi, CZ, *S.structure ); !c.holds )
            return check_result::fail( "box continuous but psi not: " + c.witness );
    }
    return { true, {}, true, {} };
}

} // namespace tconv
