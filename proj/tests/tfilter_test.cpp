#include "oracle/classical.hpp"

#include <tconv/tfilter.hpp>

#include <gtest/gtest.h>

using namespace tconv;

namespace
{

fuzzy_set fs( std::initializer_list<int> v )
{
    std::vector<lat> out;
    for ( int x : v )
        out.push_back( lat( x ) );
    return fuzzy_set( out );
}

// Boolean fuzzy set <-> subset bitmask.
fuzzy_set chi( std::size_t n, classical::subset s )
{
    fuzzy_set out( n, 0 );
    for ( std::size_t i = 0; i < n; ++i )
        out[ i ] = classical::has( s, i ) ? 1 : 0;
    return out;
}

tfilter principal( const residuated_lattice& L, std::size_t n, classical::subset s ) { return generate( L, { chi( n, s ) } ); }

// Brute-force filter count straight from TF1-TF3 over every subset of L^X.
std::size_t brute_force_filter_count( const residuated_lattice& L, std::size_t n )
{
    const auto space = all_fuzzy_sets( L, n, 64 );
    const auto m = space.size();
    std::size_t count = 0;
    for ( std::uint64_t mask = 1; mask < ( std::uint64_t( 1 ) << m ); ++mask )
    {
        auto in = [ & ]( std::size_t i ) { return ( mask >> i ) & 1u; };
        bool ok = true;
        for ( std::size_t i = 0; i < m && ok; ++i )
        {
            if ( !in( i ) )
                continue;
            ok = height( L, space[ i ] ) == L.top();
            for ( std::size_t j = 0; j < m && ok; ++j )
            {
                if ( in( j ) )
                {
                    const auto mt = meet( L, space[ i ], space[ j ] );
                    ok = in( std::find( space.begin(), space.end(), mt ) - space.begin() );
                }
                if ( ok && subsethood( L, space[ i ], space[ j ] ) == L.top() )
                    ok = in( j );
            }
        }
        count += ok;
    }
    return count;
}

} // namespace

TEST( TFilter, BaseExamples )
{
    const auto L = build_boolean( 1 );
    EXPECT_FALSE( is_base( L, std::vector{ fs( { 1, 0 } ), fs( { 0, 1 } ) } ) );
    EXPECT_THROW( generate( L, { fs( { 1, 0 } ), fs( { 0, 1 } ) } ), error );
    EXPECT_THROW( generate( L, { fs( { 0, 0 } ) } ), error );
    const auto top = generate( L, { fs( { 1, 1 } ) } );
    for ( const auto& a : all_fuzzy_sets( L, 2, 10 ) )
        EXPECT_EQ( member( L, top, a ), a == fs( { 1, 1 } ) );
    EXPECT_EQ( generate( L, { characteristic( L, 2, 1 ) } ), point_filter( L, 2, 1 ) );
}

TEST( TFilter, PointFilters )
{
    const auto L = build_chain( 3, chain_flavor::lukasiewicz );
    const auto p = point_filter( L, 3, 1 );
    for ( const auto& a : all_fuzzy_sets( L, 3, 100 ) )
        EXPECT_EQ( member( L, p, a ), a[ 1 ] == L.top() );
    EXPECT_THROW( point_filter( L, 3, 3 ), error );
    EXPECT_EQ( enumerate_filters( L, 1, 100 ).size(), 1u );
}

TEST( TFilter, ImagePreimageExamples )
{
    const auto L = build_boolean( 1 );
    const auto ce = constant_map( 2, 2, 0 );
    EXPECT_EQ( image_filter( L, ce, point_filter( L, 2, 1 ) ), point_filter( L, 2, 0 ) );
    EXPECT_FALSE( preimage_exists( L, ce, point_filter( L, 2, 1 ) ) );
    EXPECT_THROW( preimage_filter( L, ce, point_filter( L, 2, 1 ) ), error );
    const auto F = point_filter( L, 2, 1 );
    EXPECT_EQ( image_filter( L, identity_map( 2 ), F ), F );
}

TEST( TFilter, IntersectionMatchesMembershipOnChain )
{
    const auto L = build_chain( 3, chain_flavor::lukasiewicz );
    const auto all = enumerate_filters( L, 2, 20000 );
    const auto space = all_fuzzy_sets( L, 2, 100 );
    for ( const auto& F : all )
    {
        EXPECT_EQ( intersect_filter( L, F, F ), F );
        for ( const auto& G : all )
        {
            const auto H = intersect_filter( L, F, G );
            for ( const auto& a : space )
                EXPECT_EQ( member( L, H, a ), member( L, F, a ) && member( L, G, a ) );
        }
    }
}

TEST( TFilter, EnumerationCountsAndMethodsAgree )
{
    for ( std::size_t n = 1; n <= 4; ++n )
        EXPECT_EQ( enumerate_filters( build_boolean( 1 ), n, 20000 ).size(), ( 1u << n ) - 1 ) << n;
    const auto L = build_chain( 3, chain_flavor::lukasiewicz );
    const auto brute = enumerate_filters( L, 2, 20000, enumeration_method::brute_force );
    EXPECT_EQ( brute, enumerate_filters( L, 2, 20000, enumeration_method::antichain ) );
    EXPECT_EQ( brute.size(), brute_force_filter_count( L, 2 ) );
    EXPECT_THROW( enumerate_filters( L, 12, 20000 ), error );
}

TEST( TFilter, FilterAxiomsHoldOnEveryEnumeratedFilter )
{
    for ( const auto& L : { build_chain( 3, chain_flavor::lukasiewicz ), build_chain( 3, chain_flavor::godel ),
                            build_boolean( 2 ) } )
    {
        const auto space = all_fuzzy_sets( L, 2, 1000 );
        for ( const auto& F : enumerate_filters( L, 2, 20000 ) )
        {
            std::vector<bool> in( space.size() );
            for ( std::size_t i = 0; i < space.size(); ++i )
                in[ i ] = member( L, F, space[ i ] );
            EXPECT_EQ( filter_axiom_violation( L, space, in ), "" ) << describe( L, F );
        }
    }
}

TEST( TFilterProperty, CanonicalisationPreservesMembership )
{
    const auto L = build_chain( 3, chain_flavor::godel );
    const auto space = all_fuzzy_sets( L, 2, 100 );
    for ( const auto& a : space )
        for ( const auto& b : space )
        {
            const std::vector<fuzzy_set> raw{ a, b };
            if ( !is_base( L, raw ) )
                continue;
            const auto F = generate( L, raw );
            for ( const auto& c : space )
                EXPECT_EQ( member_of_base( L, raw, c ), member( L, F, c ) );
        }
}

TEST( TFilterProperty, ProductAndOdotLaws )
{
    const auto L = build_chain( 3, chain_flavor::lukasiewicz );
    const auto G = cyclic_group( 2 );
    const auto all = enumerate_filters( L, 2, 20000 );
    const auto e = point_filter( L, 2, 0 );
    for ( const auto& F : all )
    {
        EXPECT_EQ( odot_filter( L, G, e, F ), F );
        EXPECT_EQ( odot_filter( L, G, F, e ), F );
        for ( const auto& H : all )
        {
            const auto P = product_filter( L, F, H );
            EXPECT_EQ( image_filter( L, multiplication_map( G ), P ), odot_filter( L, G, F, H ) );
            EXPECT_EQ( image_filter( L, projection1( 2, 2 ), P ), F );
            EXPECT_EQ( image_filter( L, projection2( 2, 2 ), P ), H );
            for ( const auto& K : all )
                EXPECT_EQ( odot_filter( L, G, odot_filter( L, G, F, H ), K ),
                           odot_filter( L, G, F, odot_filter( L, G, H, K ) ) );
            const auto lf = lift_filter( L, G, F ), lh = lift_filter( L, G, H );
            if ( compose_exists( L, lf, lh ) )
                EXPECT_TRUE( filter_leq( L, lift_filter( L, G, odot_filter( L, G, F, H ) ), compose_filter( L, lf, lh ) ) );
        }
    }
    for ( std::size_t x = 0; x < 2; ++x )
        for ( std::size_t y = 0; y < 2; ++y )
        {
            EXPECT_EQ( odot_filter( L, G, point_filter( L, 2, x ), point_filter( L, 2, y ) ),
                       point_filter( L, 2, G.mul( x, y ) ) );
            EXPECT_EQ( product_filter( L, point_filter( L, 2, x ), point_filter( L, 2, y ) ),
                       point_filter( L, 4, pair_index( x, y, 2 ) ) );
        }
}

TEST( TFilterProperty, ProductBelowProjectionsSampled )
{
    const auto L = build_chain( 3, chain_flavor::lukasiewicz );
    const auto all = enumerate_filters( L, 4, 20000 );
    for ( std::size_t i = 0; i < all.size(); i += 97 )
    {
        const auto& K = all[ i ];
        const auto P = product_filter( L, image_filter( L, projection1( 2, 2 ), K ), image_filter( L, projection2( 2, 2 ), K ) );
        EXPECT_TRUE( filter_leq( L, P, K ) ) << describe( L, K );
    }
}

TEST( TFilterProperty, OrderIsPartialOrderOnCanonicalForms )
{
    const auto L = build_chain( 3, chain_flavor::lukasiewicz );
    const auto all = enumerate_filters( L, 2, 20000 );
    for ( const auto& F : all )
        for ( const auto& G : all )
        {
            EXPECT_EQ( filter_leq( L, F, G ) && filter_leq( L, G, F ), F == G );
            EXPECT_EQ( filter_eq( L, F, G ), F == G );
            for ( const auto& H : all )
                if ( filter_leq( L, F, G ) && filter_leq( L, G, H ) )
                    EXPECT_TRUE( filter_leq( L, F, H ) );
        }
}

TEST( TFilterOracle, BooleanOperationsAgreeWithClassicalSets )
{
    const auto L = build_boolean( 1 );
    for ( const auto& G : { cyclic_group( 2 ), cyclic_group( 3 ), cyclic_group( 4 ), klein_group() } )
    {
        const auto n = G.size();
        const auto subsets = classical::nonempty_subsets( n );
        const auto all = enumerate_filters( L, n, 20000 );
        ASSERT_EQ( all.size(), subsets.size() );
        const auto maps = all_maps( n, n, 1000 );
        for ( auto a : subsets )
        {
            const auto F = principal( L, n, a );
            EXPECT_EQ( inverse_filter( L, G, F ), principal( L, n, classical::inverse( G, a ) ) );
            EXPECT_EQ( lift_filter( L, G, F ), principal( L, n * n, classical::lift( G, a ) ) );
            for ( const auto& f : maps )
            {
                EXPECT_EQ( image_filter( L, f, F ), principal( L, n, classical::image( f, a ) ) );
                const auto pre = classical::preimage( f, a );
                EXPECT_EQ( preimage_exists( L, f, F ), pre != 0 );
                if ( pre != 0 )
                    EXPECT_EQ( preimage_filter( L, f, F ), principal( L, n, pre ) );
            }
            for ( auto b : subsets )
            {
                const auto H = principal( L, n, b );
                EXPECT_EQ( odot_filter( L, G, F, H ), principal( L, n, classical::odot( G, a, b ) ) );
                EXPECT_EQ( product_filter( L, F, H ), principal( L, n * n, classical::times( n, a, b ) ) );
                EXPECT_EQ( intersect_filter( L, F, H ), principal( L, n, classical::intersection( a, b ) ) );
                EXPECT_EQ( filter_leq( L, F, H ), ( a & b ) == b );
                const auto r = classical::lift( G, a ), s = classical::times( n, b, a );
                const auto c = classical::compose( n, r, s );
                const auto R = principal( L, n * n, r ), S = principal( L, n * n, s );
                EXPECT_EQ( compose_exists( L, R, S ), c != 0 );
                if ( c != 0 )
                    EXPECT_EQ( compose_filter( L, R, S ), principal( L, n * n, c ) );
                EXPECT_EQ( transpose_filter( L, S ), principal( L, n * n, classical::transpose( n, s ) ) );
            }
        }
    }
}
