#pragma once

#include "model.hpp"
#include "power.hpp"
#include "report.hpp"
#include "uniform.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace tconv
{

namespace detail
{

inline std::uint64_t saturating_product( const std::vector<std::uint64_t>& dims, std::uint64_t cap )
{
    std::uint64_t total = 1;
    for ( auto d : dims )
    {
        if ( d == 0 )
            return 0;
        if ( total > cap / d )
            return cap + 1;
        total *= d;
    }
    return total;
}

inline std::uint64_t saturating_pow( std::uint64_t base, std::size_t exp, std::uint64_t cap )
{
    return saturating_product( std::vector<std::uint64_t>( exp, base ), cap );
}

// idx-th fuzzy set in the order of all_fuzzy_sets.
inline fuzzy_set nth_fuzzy( const residuated_lattice& L, std::size_t n, std::uint64_t idx )
{
    fuzzy_set out( n, L.bot() );
    for ( std::size_t i = n; i-- > 0; )
    {
        out[ i ] = lat( idx % L.size() );
        idx /= L.size();
    }
    return out;
}

inline finite_map nth_map( std::size_t source, std::size_t target, std::uint64_t idx )
{
    std::vector<std::size_t> g( source );
    for ( std::size_t i = source; i-- > 0; )
    {
        g[ i ] = idx % target;
        idx /= target;
    }
    return { target, std::move( g ) };
}

} // namespace detail

// Runs body on every index tuple of the given dimensions when their product is
// within the enumeration budget, else on `samples` seeded random tuples.
// body returns a witness, empty when the property holds.
template <typename Body>
check_result quantify( const std::vector<std::uint64_t>& dims, const budgets& limits, std::uint64_t seed, Body&& body )
{
    const auto total = detail::saturating_product( dims, limits.enumeration );
    std::vector<std::uint64_t> idx( dims.size(), 0 );
    check_result r;
    if ( total == 0 )
    {
        r.note = "vacuous";
        return r;
    }
    if ( total <= limits.enumeration )
    {
        for ( std::uint64_t k = 0; k < total; ++k )
        {
            if ( auto w = body( idx ); !w.empty() )
                return check_result::fail( w );
            for ( std::size_t i = dims.size(); i-- > 0; )
            {
                if ( ++idx[ i ] < dims[ i ] )
                    break;
                idx[ i ] = 0;
            }
        }
        r.note = "exhaustive, " + std::to_string( total ) + " cases";
        return r;
    }
    std::mt19937_64 rng( seed );
    for ( std::size_t s = 0; s < limits.samples; ++s )
    {
        for ( std::size_t i = 0; i < dims.size(); ++i )
            idx[ i ] = std::uniform_int_distribution<std::uint64_t>( 0, dims[ i ] - 1 )( rng );
        if ( auto w = body( idx ); !w.empty() )
            return check_result::fail( w + " (sampled)" );
    }
    r.note = "sampled, " + std::to_string( limits.samples ) + " cases, seed " + std::to_string( seed );
    return r;
}

class suite_runner
{
    const built_model& _m;
    budgets _limits;
    std::uint64_t _seed;
    report& _out;
    std::string _suite;

    bool _family_done = false;
    std::vector<convergence_structure> _family;
    std::string _family_error;
    universe_ptr _pair_universe;
    universe_ptr _product_universe;

public:
    suite_runner( const built_model& m, budgets limits, std::uint64_t seed, report& out )
            : _m{ m }, _limits{ limits }, _seed{ seed }, _out{ out }
    {
    }

    void run( const std::string& suite )
    {
        _suite = suite;
        if ( suite == "lattice-axioms" )
            lattice_axioms();
        else if ( suite == "fuzzy-lemmas" )
            with_group( [ this ] { fuzzy_lemmas(); } );
        else if ( suite == "filter-products" )
            with_group( [ this ] { filter_products(); } );
        else if ( suite == "characterization" )
            with_structure( [ this ] { characterization(); } );
        else if ( suite == "localization" )
            with_structure( [ this ] { localization(); } );
        else if ( suite == "classification" )
            with_structure( [ this ] { classification_suite(); } );
        else if ( suite == "uniform" )
            with_structure( [ this ] { uniform_suite(); } );
        else if ( suite == "uniformization" )
            with_structure( [ this ] { uniformization(); } );
        else if ( suite == "cd-lemma" )
            with_group( [ this ] { cd_lemma(); } );
        else if ( suite == "power" )
            with_structure( [ this ] { power_suite(); } );
        else
            throw error( error_kind::unresolved_reference, "unknown suite '" + suite + "'" );
    }

private:
    const residuated_lattice& L() const { return *_m.lattice; }
    const finite_group& G() const { return *_m.group; }
    const filter_universe& U() const { return *_m.universe; }
    const convergence_structure& C() const { return *_m.convergence; }
    std::size_t n() const { return _m.group->size(); }

    std::uint64_t seed_for( std::string_view check ) const
    {
        return _seed ^ ( std::hash<std::string>{}( _suite + "/" + std::string( check ) ) * 0x9e3779b97f4a7c15ull );
    }

    void add( const std::string& check, const check_result& r, const std::string& universe = {} )
    {
        _out.add( _suite, check, r, universe );
    }
    void add( const std::string& check, verdict_kind k, const std::string& detail = {} )
    {
        _out.add( _suite, check, k, detail );
    }

    // Runs one check; budget and closure problems become skipped verdicts,
    // any other error a fail.
    template <typename Fn>
    void guarded( const std::string& check, Fn&& fn )
    {
        try
        {
            fn();
        }
        catch ( const error& e )
        {
            switch ( e.kind() )
            {
            case error_kind::budget_exceeded:
            case error_kind::closure_insufficient:
            case error_kind::image_not_in_universe:
            case error_kind::lattice_not_cd:
                add( check, verdict_kind::skipped, std::string( e.what() ) );
                break;
            default: add( check, verdict_kind::fail, std::string( e.what() ) );
            }
        }
    }

    void lattice_precondition()
    {
        if ( !_m.lattice_error.empty() )
            add( "lattice-valid", verdict_kind::fail, _m.lattice_error );
    }

    template <typename Fn>
    void with_group( Fn&& fn )
    {
        lattice_precondition();
        if ( !_m.group )
        {
            add( "precondition", verdict_kind::skipped, "model declares no group" );
            return;
        }
        fn();
    }

    template <typename Fn>
    void with_structure( Fn&& fn )
    {
        lattice_precondition();
        if ( !_m.convergence )
        {
            add( "precondition", verdict_kind::skipped, "model declares no convergence structure" );
            return;
        }
        fn();
    }

    std::string universe_note() const { return "universe: " + U().summary(); }

    std::string yes_no( const check_result& r ) const { return r.holds ? "yes" : "no: " + r.witness; }

    const std::vector<convergence_structure>* family()
    {
        if ( !_family_done )
        {
            _family_done = true;
            if ( !U().complete() )
                _family_error = "filter universe is not complete";
            else
                try
                {
                    _family = enumerate_group_structures( _m.universe, _m.group, _limits.enumeration );
                }
                catch ( const error& e )
                {
                    _family_error = e.what();
                }
        }
        return _family_error.empty() ? &_family : nullptr;
    }

    universe_ptr product_universe_xx()
    {
        if ( !_product_universe )
            _product_universe = product_universe( U(), U(), _limits.enumeration );
        return _product_universe;
    }

    universe_ptr pair_universe()
    {
        if ( _m.uniform )
            return _m.uniform->universe_ptr_();
        if ( !_pair_universe )
            _pair_universe = uniform_universe( C(), _limits.enumeration, _limits.closure_rounds );
        return _pair_universe;
    }

    // -----------------------------------------------------------------------

    void lattice_axioms()
    {
        if ( !_m.lattice_error.empty() )
            add( "construction", verdict_kind::fail, _m.lattice_error );
        const auto& raw = *_m.raw_lattice;
        const auto rep = verify_axioms( raw );
        for ( const auto& a : rep.axioms )
            add( a.name, a.holds ? check_result{} : check_result::fail( a.witness ) );
        for ( const auto& f : rep.flags )
            add( "flag " + f.name, verdict_kind::pass, f.holds ? "true" : "false: " + f.witness );
        const residuated_lattice again( raw.tables(), raw.name() );
        const bool same = again.is_mv() == raw.is_mv() && again.is_cd() == raw.is_cd() && again.is_frame() == raw.is_frame();
        add( "flags-deterministic", same ? check_result{} : check_result::fail( "flags differ on recomputation" ) );
    }

    void fuzzy_lemmas()
    {
        const auto& Lt = L();
        const auto& Gr = G();
        const auto nn = n();
        const auto N = detail::saturating_pow( Lt.size(), nn, ~std::uint64_t( 0 ) >> 1 );
        auto fz = [ & ]( std::uint64_t i ) { return detail::nth_fuzzy( Lt, nn, i ); };
        auto d = [ & ]( const fuzzy_set& a ) { return describe( Lt, a ); };
        auto check = [ & ]( const std::string& name, std::vector<std::uint64_t> dims, auto body ) {
            guarded( name, [ & ] { add( name, quantify( dims, _limits, seed_for( name ), body ) ); } );
        };
        using idx_t = const std::vector<std::uint64_t>&;

        check( "subsethood-top-iff-leq", { N, N }, [ & ]( idx_t i ) -> std::string {
            const auto a = fz( i[ 0 ] ), b = fz( i[ 1 ] );
            return ( subsethood( Lt, a, b ) == Lt.top() ) == leq( Lt, a, b ) ? "" : d( a ) + " " + d( b );
        } );
        check( "translate-identity", { N }, [ & ]( idx_t i ) -> std::string {
            const auto a = fz( i[ 0 ] );
            return translate( Gr, Gr.identity(), a ) == a ? "" : d( a );
        } );
        check( "translate-action", { nn, nn, N }, [ & ]( idx_t i ) -> std::string {
            const auto a = fz( i[ 2 ] );
            return translate( Gr, Gr.mul( i[ 0 ], i[ 1 ] ), a ) == translate( Gr, i[ 0 ], translate( Gr, i[ 1 ], a ) )
                           ? ""
                           : "x=" + Gr.name( i[ 0 ] ) + " y=" + Gr.name( i[ 1 ] ) + " " + d( a );
        } );
        check( "translate-odot", { nn, N, N }, [ & ]( idx_t i ) -> std::string {
            const auto a = fz( i[ 1 ] ), b = fz( i[ 2 ] );
            return fz_odot( Lt, Gr, translate( Gr, i[ 0 ], a ), b ) == translate( Gr, i[ 0 ], fz_odot( Lt, Gr, a, b ) )
                           ? ""
                           : "x=" + Gr.name( i[ 0 ] ) + " " + d( a ) + " " + d( b );
        } );
        check( "odot-points", { nn, nn }, [ & ]( idx_t i ) -> std::string {
            const auto p = fz_odot( Lt, Gr, characteristic( Lt, nn, i[ 0 ] ), characteristic( Lt, nn, i[ 1 ] ) );
            return p == characteristic( Lt, nn, Gr.mul( i[ 0 ], i[ 1 ] ) ) ? "" : d( p );
        } );
        check( "odot-meet", { N, N, N, N }, [ & ]( idx_t i ) -> std::string {
            const auto l1 = fz( i[ 0 ] ), l2 = fz( i[ 1 ] ), m1 = fz( i[ 2 ] ), m2 = fz( i[ 3 ] );
            const auto lhs = fz_odot( Lt, Gr, meet( Lt, l1, l2 ), meet( Lt, m1, m2 ) );
            const auto rhs = meet( Lt, fz_odot( Lt, Gr, l1, m1 ), fz_odot( Lt, Gr, l2, m2 ) );
            return leq( Lt, lhs, rhs ) ? "" : d( l1 ) + " " + d( l2 ) + " " + d( m1 ) + " " + d( m2 );
        } );
        check( "subsethood-product", { N, N, N, N }, [ & ]( idx_t i ) -> std::string {
            const auto l1 = fz( i[ 0 ] ), l2 = fz( i[ 1 ] ), m1 = fz( i[ 2 ] ), m2 = fz( i[ 3 ] );
            const auto lhs = Lt.meet( subsethood( Lt, l1, m1 ), subsethood( Lt, l2, m2 ) );
            return Lt.leq( lhs, subsethood( Lt, fz_times( Lt, l1, l2 ), fz_times( Lt, m1, m2 ) ) )
                           ? ""
                           : d( l1 ) + " " + d( l2 ) + " " + d( m1 ) + " " + d( m2 );
        } );
        check( "subsethood-translate", { nn, N, N }, [ & ]( idx_t i ) -> std::string {
            const auto a = fz( i[ 1 ] ), b = fz( i[ 2 ] );
            return Lt.leq( subsethood( Lt, a, b ), subsethood( Lt, translate( Gr, i[ 0 ], a ), translate( Gr, i[ 0 ], b ) ) )
                           ? ""
                           : "x=" + Gr.name( i[ 0 ] ) + " " + d( a ) + " " + d( b );
        } );
        check( "subsethood-odot", { N, N, N, N }, [ & ]( idx_t i ) -> std::string {
            const auto l1 = fz( i[ 0 ] ), l2 = fz( i[ 1 ] ), m1 = fz( i[ 2 ] ), m2 = fz( i[ 3 ] );
            const auto lhs = Lt.meet( subsethood( Lt, l1, m1 ), subsethood( Lt, l2, m2 ) );
            return Lt.leq( lhs, subsethood( Lt, fz_odot( Lt, Gr, l1, l2 ), fz_odot( Lt, Gr, m1, m2 ) ) )
                           ? ""
                           : d( l1 ) + " " + d( l2 ) + " " + d( m1 ) + " " + d( m2 );
        } );
        check( "projection-preimages", { N, N }, [ & ]( idx_t i ) -> std::string {
            const auto a = fz( i[ 0 ] ), b = fz( i[ 1 ] );
            const auto lhs = meet( Lt, preimage( projection1( nn, nn ), a ), preimage( projection2( nn, nn ), b ) );
            return lhs == fz_times( Lt, a, b ) ? "" : d( a ) + " " + d( b );
        } );
        const auto maps = detail::saturating_pow( nn, nn, ~std::uint64_t( 0 ) >> 1 );
        check( "preimage-of-image", { maps, N }, [ & ]( idx_t i ) -> std::string {
            const auto f = detail::nth_map( nn, nn, i[ 0 ] );
            const auto a = fz( i[ 1 ] );
            return leq( Lt, a, preimage( f, image( Lt, f, a ) ) ) ? "" : d( a );
        } );
        check( "image-constant-map", { nn, N }, [ & ]( idx_t i ) -> std::string {
            const auto a = fz( i[ 1 ] );
            return image( Lt, constant_map( nn, nn, i[ 0 ] ), a )[ i[ 0 ] ] == height( Lt, a ) ? "" : d( a );
        } );
        check( "lift-transpose", { N }, [ & ]( idx_t i ) -> std::string {
            const auto a = fz( i[ 0 ] );
            return transpose( lift_l( Gr, a ) ) == lift_l( Gr, fz_inv( Gr, a ) ) ? "" : d( a );
        } );
        const auto NN = detail::saturating_pow( Lt.size(), nn * nn, ~std::uint64_t( 0 ) >> 1 );
        check( "transpose-involution", { NN }, [ & ]( idx_t i ) -> std::string {
            const auto a = detail::nth_fuzzy( Lt, nn * nn, i[ 0 ] );
            return transpose( transpose( a ) ) == a ? "" : d( a );
        } );
    }

    void filter_products()
    {
        const auto& Lt = L();
        const auto& Gr = G();
        const auto& V = U();
        const auto nn = n();
        const std::uint64_t m = V.size();
        const auto N = detail::saturating_pow( Lt.size(), nn, ~std::uint64_t( 0 ) >> 1 );
        const auto un = universe_note();
        auto d = [ & ]( const tfilter& F ) { return describe( Lt, F ); };
        auto check = [ & ]( const std::string& name, std::vector<std::uint64_t> dims, auto body,
                            const std::string& extra = {} ) {
            guarded( name, [ & ] {
                auto r = quantify( dims, _limits, seed_for( name ), body );
                r.relative = !V.complete();
                if ( !extra.empty() )
                    r.note += ( r.note.empty() ? "" : "; " ) + extra;
                add( name, r, un );
            } );
        };
        using idx_t = const std::vector<std::uint64_t>&;

        check( "multiplication-image", { m, m }, [ & ]( idx_t i ) -> std::string {
            const auto& F = V[ i[ 0 ] ];
            const auto& H = V[ i[ 1 ] ];
            const auto lhs = image_filter( Lt, multiplication_map( Gr ), product_filter( Lt, F, H ) );
            return filter_eq( Lt, lhs, odot_filter( Lt, Gr, F, H ) ) ? "" : d( F ) + " " + d( H );
        } );
        check( "identity-unit", { m }, [ & ]( idx_t i ) -> std::string {
            const auto& F = V[ i[ 0 ] ];
            const auto e = point_filter( Lt, nn, Gr.identity() );
            return filter_eq( Lt, odot_filter( Lt, Gr, e, F ), F ) && filter_eq( Lt, odot_filter( Lt, Gr, F, e ), F )
                           ? ""
                           : d( F );
        } );
        check( "associative", { m, m, m }, [ & ]( idx_t i ) -> std::string {
            const auto &F = V[ i[ 0 ] ], &H = V[ i[ 1 ] ], &K = V[ i[ 2 ] ];
            return filter_eq( Lt, odot_filter( Lt, Gr, odot_filter( Lt, Gr, F, H ), K ),
                              odot_filter( Lt, Gr, F, odot_filter( Lt, Gr, H, K ) ) )
                           ? ""
                           : d( F ) + " " + d( H ) + " " + d( K );
        } );
        check( "point-products", { nn, nn }, [ & ]( idx_t i ) -> std::string {
            const auto px = point_filter( Lt, nn, i[ 0 ] ), py = point_filter( Lt, nn, i[ 1 ] );
            if ( !filter_eq( Lt, odot_filter( Lt, Gr, px, py ), point_filter( Lt, nn, Gr.mul( i[ 0 ], i[ 1 ] ) ) ) )
                return "odot at x=" + Gr.name( i[ 0 ] ) + " y=" + Gr.name( i[ 1 ] );
            if ( !filter_eq( Lt, product_filter( Lt, px, py ), point_filter( Lt, nn * nn, pair_index( i[ 0 ], i[ 1 ], nn ) ) ) )
                return "product at x=" + Gr.name( i[ 0 ] ) + " y=" + Gr.name( i[ 1 ] );
            return "";
        } );
        check( "point-filter-membership", { nn, N }, [ & ]( idx_t i ) -> std::string {
            const auto a = detail::nth_fuzzy( Lt, nn, i[ 1 ] );
            return member( Lt, point_filter( Lt, nn, i[ 0 ] ), a ) == ( a[ i[ 0 ] ] == Lt.top() ) ? "" : describe( Lt, a );
        } );
        check( "inverse-involution", { m }, [ & ]( idx_t i ) -> std::string {
            const auto& F = V[ i[ 0 ] ];
            return filter_eq( Lt, inverse_filter( Lt, Gr, inverse_filter( Lt, Gr, F ) ), F ) ? "" : d( F );
        } );
        check( "inverse-reverses-odot", { m, m }, [ & ]( idx_t i ) -> std::string {
            const auto &F = V[ i[ 0 ] ], &H = V[ i[ 1 ] ];
            return filter_eq( Lt, inverse_filter( Lt, Gr, odot_filter( Lt, Gr, F, H ) ),
                              odot_filter( Lt, Gr, inverse_filter( Lt, Gr, H ), inverse_filter( Lt, Gr, F ) ) )
                           ? ""
                           : d( F ) + " " + d( H );
        } );
        check( "projections-of-product", { m, m }, [ & ]( idx_t i ) -> std::string {
            const auto &F = V[ i[ 0 ] ], &H = V[ i[ 1 ] ];
            const auto P = product_filter( Lt, F, H );
            return filter_eq( Lt, image_filter( Lt, projection1( nn, nn ), P ), F ) &&
                                   filter_eq( Lt, image_filter( Lt, projection2( nn, nn ), P ), H )
                           ? ""
                           : d( F ) + " " + d( H );
        } );
        guarded( "product-below-projections", [ & ] {
            const auto PU = product_universe_xx();
            auto r = quantify( { PU->size() }, _limits, seed_for( "product-below-projections" ),
                               [ & ]( idx_t i ) -> std::string {
                                   const auto& K = ( *PU )[ i[ 0 ] ];
                                   const auto P = product_filter( Lt, image_filter( Lt, projection1( nn, nn ), K ),
                                                                  image_filter( Lt, projection2( nn, nn ), K ) );
                                   return filter_leq( Lt, P, K ) ? "" : d( K );
                               } );
            r.relative = !PU->complete();
            add( "product-below-projections", r, "product universe: " + PU->summary() );
        } );
        check( "image-identity", { m }, [ & ]( idx_t i ) -> std::string {
            return filter_eq( Lt, image_filter( Lt, identity_map( nn ), V[ i[ 0 ] ] ), V[ i[ 0 ] ] ) ? "" : d( V[ i[ 0 ] ] );
        } );
        const auto maps = detail::saturating_pow( nn, nn, ~std::uint64_t( 0 ) >> 1 );
        check( "surjective-preimage-exists", { maps, m }, [ & ]( idx_t i ) -> std::string {
            const auto f = detail::nth_map( nn, nn, i[ 0 ] );
            if ( !f.is_surjective() )
                return "";
            return preimage_exists( Lt, f, V[ i[ 1 ] ] ) ? "" : d( V[ i[ 1 ] ] );
        } );
        check( "filter-order-antisymmetric", { m, m }, [ & ]( idx_t i ) -> std::string {
            const bool both = V.contained( i[ 0 ], i[ 1 ] ) && V.contained( i[ 1 ], i[ 0 ] );
            return both == ( i[ 0 ] == i[ 1 ] ) ? "" : d( V[ i[ 0 ] ] ) + " " + d( V[ i[ 1 ] ] );
        } );
        check(
                "intersection-membership", { m, m, N },
                [ & ]( idx_t i ) -> std::string {
                    const auto &F = V[ i[ 0 ] ], &H = V[ i[ 1 ] ];
                    const auto a = detail::nth_fuzzy( Lt, nn, i[ 2 ] );
                    return member( Lt, intersect_filter( Lt, F, H ), a ) == ( member( Lt, F, a ) && member( Lt, H, a ) )
                                   ? ""
                                   : d( F ) + " " + d( H ) + " at " + describe( Lt, a );
                },
                "intersections use the base of pairwise joins" );
        check( "lift-of-odot-below-composition", { m, m }, [ & ]( idx_t i ) -> std::string {
            const auto &F = V[ i[ 0 ] ], &H = V[ i[ 1 ] ];
            const auto lf = lift_filter( Lt, Gr, F ), lh = lift_filter( Lt, Gr, H );
            if ( !compose_exists( Lt, lf, lh ) )
                return "";
            return filter_leq( Lt, lift_filter( Lt, Gr, odot_filter( Lt, Gr, F, H ) ), compose_filter( Lt, lf, lh ) )
                           ? ""
                           : d( F ) + " " + d( H );
        } );

        std::vector<std::string> declared;
        for ( const auto& [ name, F ] : _m.filters )
            if ( F.domain() == nn )
                declared.push_back( name );
        const std::uint64_t nd = declared.size();
        check( "canonical-membership", { nd, N }, [ & ]( idx_t i ) -> std::string {
            const auto& raw = _m.raw_bases.at( declared[ i[ 0 ] ] );
            const auto a = detail::nth_fuzzy( Lt, nn, i[ 1 ] );
            return member_of_base( Lt, raw, a ) == member( Lt, _m.filters.at( declared[ i[ 0 ] ] ), a )
                           ? ""
                           : declared[ i[ 0 ] ] + " at " + describe( Lt, a );
        } );
        check( "base-refinement", { nd, nd }, [ & ]( idx_t i ) -> std::string {
            const auto& r1 = _m.raw_bases.at( declared[ i[ 0 ] ] );
            const auto& r2 = _m.raw_bases.at( declared[ i[ 1 ] ] );
            std::vector<fuzzy_set> prods;
            for ( const auto& a : r1 )
                for ( const auto& b : r2 )
                    prods.push_back( fz_odot( Lt, Gr, a, b ) );
            const auto F = odot_filter( Lt, Gr, _m.filters.at( declared[ i[ 0 ] ] ), _m.filters.at( declared[ i[ 1 ] ] ) );
            return filter_eq( Lt, generate( Lt, prods ), F ) ? "" : declared[ i[ 0 ] ] + " " + declared[ i[ 1 ] ];
        } );

        guarded( "filter-axioms", [ & ] {
            const auto space = all_fuzzy_sets( Lt, nn, _limits.enumeration );
            for ( const auto& F : V.filters() )
            {
                std::vector<bool> in( space.size() );
                for ( std::size_t k = 0; k < space.size(); ++k )
                    in[ k ] = member( Lt, F, space[ k ] );
                if ( auto w = filter_axiom_violation( Lt, space, in ); !w.empty() )
                {
                    add( "filter-axioms", check_result::fail( d( F ) + ": " + w ) );
                    return;
                }
            }
            add( "filter-axioms", check_result{ true, "", false, std::to_string( V.size() ) + " filters" } );
        } );
        guarded( "enumeration-methods", [ & ] {
            if ( N > 16 )
            {
                add( "enumeration-methods", verdict_kind::skipped, "brute force limited to 16-element spaces" );
                return;
            }
            const auto a = enumerate_filters( Lt, nn, _limits.enumeration, enumeration_method::brute_force );
            const auto b = enumerate_filters( Lt, nn, _limits.enumeration, enumeration_method::antichain );
            add( "enumeration-methods", a == b ? check_result{ true, "", false, std::to_string( a.size() ) + " filters" }
                                               : check_result::fail( std::to_string( a.size() ) + " by brute force vs " +
                                                                     std::to_string( b.size() ) + " by antichains" ) );
        } );
    }

    void characterization()
    {
        guarded( "model-structure", [ & ] {
            const group_tables T( U(), G() );
            const operation_tables O( U(), G(), product_universe_xx() );
            const auto tcg = is_group_by_tcg( C(), T );
            const auto ops = is_group_by_operations( C(), O );
            add( "tcg-axioms", tcg, universe_note() );
            add( "continuous-operations", ops, universe_note() );
            add( "equivalence", tcg.holds == ops.holds
                                        ? check_result{ true, "", tcg.relative || ops.relative,
                                                        std::string( "both " ) + ( tcg.holds ? "hold" : "fail" ) }
                                        : check_result::fail( "TCG says " + yes_no( tcg ) + "; operations say " +
                                                              yes_no( ops ) ) );
        } );
        guarded( "family-equivalence", [ & ] {
            if ( !U().complete() )
            {
                add( "family-equivalence", verdict_kind::skipped, "filter universe is not complete" );
                return;
            }
            const auto all = enumerate_convergence_structures( _m.universe, _m.group, _limits.enumeration );
            const group_tables T( U(), G() );
            const operation_tables O( U(), G(), product_universe_xx() );
            std::size_t groups = 0;
            for ( std::size_t k = 0; k < all.size(); ++k )
            {
                const bool a = is_group_by_tcg( all[ k ], T ).holds;
                const bool b = is_group_by_operations( all[ k ], O ).holds;
                if ( a != b )
                {
                    add( "family-equivalence", check_result::fail( "structure #" + std::to_string( k ) + ": TCG " +
                                                                   ( a ? "yes" : "no" ) + ", operations " +
                                                                   ( b ? "yes" : "no" ) ) );
                    return;
                }
                groups += a;
            }
            add( "family-equivalence",
                 check_result{ true, "", !O.product->complete(),
                               std::to_string( all.size() ) + " structures, " + std::to_string( groups ) +
                                       " groups, 0 discrepancies" } );
        } );
    }

    void localization()
    {
        guarded( "model-structure", [ & ] { add( "model-structure", localization_check( C() ), universe_note() ); } );
        guarded( "family", [ & ] {
            const auto* fam = family();
            if ( !fam )
            {
                add( "family", verdict_kind::skipped, _family_error );
                return;
            }
            const group_tables T( U(), G() );
            for ( std::size_t k = 0; k < fam->size(); ++k )
                if ( auto r = localization_check( ( *fam )[ k ], T ); !r.holds )
                {
                    add( "family", check_result::fail( "group #" + std::to_string( k ) + ": " + r.witness ) );
                    return;
                }
            add( "family", check_result{ true, "", false, std::to_string( fam->size() ) + " groups" } );
        } );
    }

    // Pretopological-group consequences and the MV topologization claim for
    // one structure. Returns the first failure, empty when everything holds.
    std::vector<std::pair<std::string, check_result>> pretopological_group_checks( const convergence_structure& S )
    {
        std::vector<std::pair<std::string, check_result>> out;
        const auto& Lt = L();
        const auto& Gr = G();
        const auto nn = n();
        const auto N = detail::saturating_pow( Lt.size(), nn, ~std::uint64_t( 0 ) >> 1 );
        std::vector<tfilter> u;
        for ( std::size_t x = 0; x < nn; ++x )
            u.push_back( ux( S, x ) );
        using idx_t = const std::vector<std::uint64_t>&;

        out.emplace_back( "lambda-star-below", quantify( { nn, N }, _limits, seed_for( "lambda-star-below" ),
                                                         [ & ]( idx_t i ) -> std::string {
                                                             const auto a = detail::nth_fuzzy( Lt, nn, i[ 1 ] );
                                                             if ( !member( Lt, u[ i[ 0 ] ], a ) )
                                                                 return "";
                                                             return leq( Lt, lambda_star( S, a ), a ) ? "" : describe( Lt, a );
                                                         } ) );
        const auto e = Gr.identity();
        out.emplace_back( "ue-below-square",
                          filter_leq( Lt, u[ e ], odot_filter( Lt, Gr, u[ e ], u[ e ] ) )
                                  ? check_result{}
                                  : check_result::fail( "U_e=" + describe( Lt, u[ e ] ) ) );
        out.emplace_back( "ux-translation", quantify( { nn, N }, _limits, seed_for( "ux-translation" ),
                                                      [ & ]( idx_t i ) -> std::string {
                                                          const auto x = i[ 0 ];
                                                          const auto a = detail::nth_fuzzy( Lt, nn, i[ 1 ] );
                                                          const bool l1 = member( Lt, u[ x ], a );
                                                          const bool r1 = member( Lt, u[ e ], translate( Gr, Gr.inv( x ), a ) );
                                                          const bool l2 = member( Lt, u[ e ], a );
                                                          const bool r2 = member( Lt, u[ x ], translate( Gr, x, a ) );
                                                          return l1 == r1 && l2 == r2 ? ""
                                                                                      : "x=" + Gr.name( x ) + " " +
                                                                                                describe( Lt, a );
                                                      } ) );
        if ( Lt.is_mv() )
        {
            auto tt = tt_check( S, _limits.enumeration );
            std::string fams;
            for ( const auto& f : tt.witnessed_by )
                fams += ( fams.empty() ? "" : "," ) + f;
            if ( tt.result.holds )
                tt.result.note = "witnessed by " + ( fams.empty() ? std::string( "none needed" ) : fams );
            out.emplace_back( "mv-topological", tt.result );
        }
        return out;
    }

    void classification_suite()
    {
        const auto& S = C();
        const auto cls = classify( S, _limits.enumeration );
        const auto un = universe_note();
        add( "convergence", cls.convergence, un );
        add( "limit", verdict_kind::pass, yes_no( cls.limit ) );
        add( "pretopological", verdict_kind::pass, yes_no( cls.pretopological ) );
        std::string tt = yes_no( cls.topological );
        if ( cls.topological.holds && !cls.tt_witnessed_by.empty() )
        {
            tt += " (witnessed by";
            for ( const auto& f : cls.tt_witnessed_by )
                tt += " " + f;
            tt += ")";
        }
        add( "topological", verdict_kind::pass, tt );

        guarded( "lambda-star-discrete", [ & ] {
            if ( !( S == discrete_structure( _m.universe, _m.group ) ) )
            {
                add( "lambda-star-discrete", verdict_kind::skipped, "structure is not discrete" );
                return;
            }
            const auto N = detail::saturating_pow( L().size(), n(), ~std::uint64_t( 0 ) >> 1 );
            add( "lambda-star-discrete",
                 quantify( { N }, _limits, seed_for( "lambda-star-discrete" ), [ & ]( const auto& i ) -> std::string {
                     const auto a = detail::nth_fuzzy( L(), n(), i[ 0 ] );
                     return lambda_star( S, a ) == a ? "" : describe( L(), a );
                 } ) );
        } );

        guarded( "pretopological-group", [ & ] {
            const bool group = is_group_by_tcg( S ).holds;
            if ( !group || !cls.pretopological.holds )
            {
                add( "pretopological-group", verdict_kind::skipped, "structure is not a pretopological group" );
                return;
            }
            for ( auto& [ name, r ] : pretopological_group_checks( S ) )
                add( name, r, un );
            if ( !L().is_mv() )
                add( "mv-topological", verdict_kind::skipped, "lattice is not MV" );
        } );

        guarded( "family-topological", [ & ] {
            if ( !L().is_mv() )
            {
                add( "family-topological", verdict_kind::skipped, "lattice is not MV" );
                return;
            }
            const auto* fam = family();
            if ( !fam )
            {
                add( "family-topological", verdict_kind::skipped, _family_error );
                return;
            }
            std::size_t pretop = 0;
            for ( std::size_t k = 0; k < fam->size(); ++k )
            {
                if ( !check_pt( ( *fam )[ k ] ).holds )
                    continue;
                ++pretop;
                for ( auto& [ name, r ] : pretopological_group_checks( ( *fam )[ k ] ) )
                    if ( !r.holds )
                    {
                        add( "family-topological",
                             check_result::fail( "group #" + std::to_string( k ) + " " + name + ": " + r.witness ) );
                        return;
                    }
            }
            add( "family-topological",
                 check_result{ true, "", false,
                               std::to_string( pretop ) + " pretopological groups of " + std::to_string( fam->size() ) } );
        } );
    }

    void uniform_suite()
    {
        const auto& Lt = L();
        auto report_tuc = [ & ]( const std::string& prefix, const uniform_structure& P ) {
            const auto r = check_tuc( P );
            const auto un = "pair universe: " + P.universe().summary();
            add( prefix + "TUC1", r.tuc1, un );
            add( prefix + "TUC2", r.tuc2, un );
            add( prefix + "TUC3", r.tuc3, un );
            add( prefix + "TUC4", r.tuc4, un );
            add( prefix + "TUC5-limit", verdict_kind::pass, yes_no( r.limit ) );
            return r;
        };
        if ( _m.uniform )
            guarded( "declared", [ & ] {
                const auto r = report_tuc( "", *_m.uniform );
                if ( r.uniform() )
                {
                    const auto back = conv_from_phi( *_m.uniform, _m.universe );
                    auto tc = check_tc1( back );
                    if ( tc.holds )
                        tc = check_tc2( back );
                    add( "induced-convergence", tc, universe_note() );
                }
            } );
        guarded( "from-group", [ & ] {
            if ( !is_group_by_tcg( C() ).holds )
            {
                add( "from-group", verdict_kind::skipped, "structure is not a convergence group" );
                return;
            }
            const auto P = phi_from_group( C(), pair_universe() );
            report_tuc( "from-group ", P );
            const auto& PU = P.universe();
            const auto e = point_filter( Lt, n(), G().identity() );
            const auto le = lift_filter( Lt, G(), e );
            check_result diag;
            for ( std::size_t x = 0; x < n() && diag.holds; ++x )
                if ( !filter_leq( Lt, le, PU[ PU.point( diagonal_point( n(), x ) ) ] ) )
                    diag = check_result::fail( "x=" + G().name( x ) );
            add( "identity-lift-below-diagonal", diag );
        } );
        guarded( "transpose-involution", [ & ] {
            const auto& PU = _m.uniform ? _m.uniform->universe() : *pair_universe();
            check_result r{ true, "", !PU.complete(), {} };
            for ( const auto& K : PU.filters() )
                if ( !( transpose_filter( Lt, transpose_filter( Lt, K ) ) == K ) )
                {
                    r = check_result::fail( describe( Lt, K ) );
                    break;
                }
            add( "transpose-involution", r, "pair universe: " + PU.summary() );
        } );
    }

    void uniformization()
    {
        guarded( "lift-point-lemma", [ & ] { add( "lift-point-lemma", lift_point_lemma_check( U(), G() ), universe_note() ); } );
        guarded( "round-trip", [ & ] {
            auto r = uniformization_check( C(), pair_universe() );
            if ( !r.holds )
                if ( auto g = is_group_by_tcg( C() ); !g.holds )
                    r.witness += " (structure is not a convergence group: " + g.witness + ")";
            add( "round-trip", r, "pair universe: " + pair_universe()->summary() );
        } );
        guarded( "induced-convergence", [ & ] {
            const auto back = conv_from_phi( phi_from_group( C(), pair_universe() ), _m.universe );
            auto tc = check_tc1( back );
            if ( tc.holds )
                tc = check_tc2( back );
            add( "induced-convergence", tc, universe_note() );
        } );
        guarded( "family-round-trip", [ & ] {
            const auto* fam = family();
            if ( !fam )
            {
                add( "family-round-trip", verdict_kind::skipped, _family_error );
                return;
            }
            for ( std::size_t k = 0; k < fam->size(); ++k )
            {
                const auto UXX = uniform_universe( ( *fam )[ k ], _limits.enumeration, _limits.closure_rounds );
                if ( auto r = uniformization_check( ( *fam )[ k ], UXX ); !r.holds )
                {
                    add( "family-round-trip", check_result::fail( "group #" + std::to_string( k ) + ": " + r.witness ) );
                    return;
                }
            }
            add( "family-round-trip", check_result{ true, "", false, std::to_string( fam->size() ) + " groups" } );
        } );
    }

    void cd_lemma()
    {
        const auto& Lt = L();
        if ( Lt.is_cd() )
            add( "cd-law", verdict_kind::pass );
        else
            add( "cd-law", verdict_kind::skipped, "lattice is not CD; lemma evaluated as a counterexample hunt" );
        const auto nn = n();
        const auto maps = detail::saturating_pow( nn, nn, ~std::uint64_t( 0 ) >> 1 );
        const std::uint64_t m = U().size();
        guarded( "image-of-product", [ & ] {
            auto r = quantify( { maps, maps, m, m }, _limits, seed_for( "image-of-product" ),
                               [ & ]( const auto& i ) -> std::string {
                                   const auto f1 = detail::nth_map( nn, nn, i[ 0 ] );
                                   const auto f2 = detail::nth_map( nn, nn, i[ 1 ] );
                                   auto c = lemma_cd_check( Lt, f1, f2, U()[ i[ 2 ] ], U()[ i[ 3 ] ] );
                                   return c.holds ? "" : c.witness;
                               } );
            r.relative = !U().complete();
            add( "image-of-product", r, universe_note() );
        } );
        const auto N = detail::saturating_pow( Lt.size(), nn, ~std::uint64_t( 0 ) >> 1 );
        guarded( "image-of-product-bases", [ & ] {
            add( "image-of-product-bases",
                 quantify( { maps, maps, N, N }, _limits, seed_for( "image-of-product-bases" ),
                           [ & ]( const auto& i ) -> std::string {
                               const auto f1 = detail::nth_map( nn, nn, i[ 0 ] );
                               const auto f2 = detail::nth_map( nn, nn, i[ 1 ] );
                               const auto a = detail::nth_fuzzy( Lt, nn, i[ 2 ] );
                               const auto b = detail::nth_fuzzy( Lt, nn, i[ 3 ] );
                               const auto lhs = image( Lt, product_map( f1, f2 ), fz_times( Lt, a, b ) );
                               const auto rhs = fz_times( Lt, image( Lt, f1, a ), image( Lt, f2, b ) );
                               return lhs == rhs ? ""
                                                 : describe( Lt, a ) + " " + describe( Lt, b ) + ": image of product " +
                                                           describe( Lt, lhs ) + " vs product of images " +
                                                           describe( Lt, rhs );
                           } ) );
        } );
    }

    void power_suite()
    {
        const auto nn = n();
        if ( detail::saturating_pow( nn, nn, 1000 ) > 27 )
        {
            add( "precondition", verdict_kind::skipped, "power objects are limited to carriers of at most 3 points" );
            return;
        }
        auto CX = _m.convergence;
        std::optional<map_space> S;
        guarded( "build", [ & ] {
            S = build_power( CX, CX, _limits.enumeration, _limits.closure_rounds );
            std::size_t brute = 0;
            for ( const auto& f : all_maps( nn, nn, _limits.enumeration ) )
                brute += continuous( f, *CX, *CX ).holds;
            add( "continuous-maps",
                 brute == S->maps.size()
                         ? check_result{ true, "", false,
                                         std::to_string( S->maps.size() ) + " of " + std::to_string( S->maps.size() ) +
                                                 " re-verified; map universe: " + S->map_universe->summary() }
                         : check_result::fail( "count differs on re-verification" ) );
        } );
        if ( !S )
            return;
        if ( !S->group )
        {
            add( "pointwise-group", S->closure );
            return;
        }
        if ( isomorphic( *S->group, klein_group() ) )
            add( "pointwise-group", verdict_kind::pass, "isomorphic to the Klein four-group" );
        else
            add( "pointwise-group", verdict_kind::pass, std::to_string( S->group->size() ) + " elements" );
        guarded( "power-group", [ & ] {
            for ( const auto& c : check_power_group( *S ) )
                add( c.name, c.result, "map universe: " + S->map_universe->summary() );
        } );
        guarded( "ev-continuity", [ & ] {
            add( "ev-continuity", ev_continuity_check( *S ), "ev universe: " + S->ev_universe->summary() );
        } );
        add( "square-decomposition", square_decomposition_check( *S ) );
        if ( auto w = ev_homomorphism_failure( *S ) )
            add( "ev-not-homomorphism", verdict_kind::pass, *w );
        else
            add( "ev-not-homomorphism", verdict_kind::pass, "ev is a homomorphism on this instance" );
        guarded( "transpose", [ & ] {
            const auto phi = multiplication_map( G() );
            const auto rep = transpose_check( phi, *CX, *S, _limits.enumeration );
            for ( auto c : rep.checks )
            {
                if ( c.name == "uniqueness" && c.result.holds )
                    c.result.note = std::to_string( rep.scanned ) + " candidates scanned, " +
                                    std::to_string( rep.satisfying ) + " satisfying";
                add( "transpose " + c.name, c.result );
            }
        } );
        guarded( "box-converse", [ & ] { add( "box-converse", box_converse_check( *CX, *S, _limits.enumeration ) ); } );
    }
};

inline std::vector<std::string> expand_suites( const std::vector<std::string>& requested )
{
    std::vector<std::string> out;
    for ( const auto& s : requested )
    {
        if ( s == "all-theorems" )
        {
            for ( const auto& t : suite_catalogue() )
                if ( t != "all-theorems" && std::find( out.begin(), out.end(), t ) == out.end() )
                    out.push_back( t );
        }
        else if ( std::find( out.begin(), out.end(), s ) == out.end() )
            out.push_back( s );
    }
    return out;
}

// Runs the requested suites (the model's own list when empty, all-theorems
// when that is empty too).
inline report run_suite( const built_model& m, std::vector<std::string> suites, std::uint64_t seed,
                         const budgets& limits, bool timing = false )
{
    report r;
    r.model = m.name;
    r.seed = seed;
    r.limits = limits;
    if ( suites.empty() )
        suites = m.suites;
    if ( suites.empty() )
        suites = { "all-theorems" };
    suite_runner runner( m, limits, seed, r );
    for ( const auto& s : expand_suites( suites ) )
    {
        const auto t0 = std::chrono::steady_clock::now();
        runner.run( s );
        if ( timing )
            r.timing.emplace_back( s, std::chrono::duration<double>( std::chrono::steady_clock::now() - t0 ).count() );
    }
    return r;
}

} // namespace tconv
