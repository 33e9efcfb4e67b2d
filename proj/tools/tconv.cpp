#include <tconv/suites.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace
{

const std::map<std::string, std::string>& demos()
{
    static const std::map<std::string, std::string> d{
            { "z4-boolean-discrete", "[lattice]\nbuiltin = boolean 1\n\n[group]\nbuiltin = Z4\n\n[convergence]\n"
                                     "builtin = discrete\n\n[suites]\nrun = all-theorems\n" },
    };
    return d;
}

std::string read_file( const std::string& path )
{
    std::ifstream in( path );
    if ( !in )
        throw tconv::error( tconv::error_kind::invalid_parameter, "cannot open '" + path + "'" );
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string stem( const std::string& path )
{
    auto slash = path.find_last_of( '/' );
    auto base = slash == std::string::npos ? path : path.substr( slash + 1 );
    return base.substr( 0, base.find( '.' ) );
}

tconv::built_model load( const std::string& text, const std::string& name, const tconv::budgets& limits )
{
    return tconv::build_model( tconv::parse_model( text ), limits, name );
}

int emit( const tconv::report& r, const std::string& format )
{
    if ( format == "machine" )
        std::cout << tconv::to_json( r ).dump( 2 ) << "\n";
    else
        std::cout << tconv::to_text( r );
    return r.failed() ? 1 : 0;
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "Finite workbench for convergence groups over residuated lattices" };
    app.require_subcommand( 0, 1 );

    tconv::budgets limits;
    std::uint64_t seed = 1;
    std::string format = "text";
    std::vector<std::string> suites;
    bool timing = false;
    auto add_run_flags = [ & ]( CLI::App* c ) {
        c->add_option( "--seed", seed, "seed for sampled quantifiers" )->capture_default_str();
        c->add_option( "--budget", limits.enumeration, "enumeration cap" )->capture_default_str();
        c->add_option( "--samples", limits.samples, "sample count when a quantifier exceeds the cap" )
                ->capture_default_str();
        c->add_option( "--closure-rounds", limits.closure_rounds, "closure iterations for generated universes" )
                ->capture_default_str();
        c->add_option( "--format", format, "report format" )
                ->check( CLI::IsMember( { "text", "machine" } ) )
                ->capture_default_str();
        c->add_flag( "--timing", timing, "append per-suite wall time" );
    };

    std::string demo;
    bool list = false;
    app.add_option( "--demo", demo, "run a built-in model" );
    app.add_flag( "--list-suites", list, "print the check catalogue" );
    add_run_flags( &app );

    std::string model_path;
    auto* check = app.add_subcommand( "check", "run theorem suites on a model file" );
    check->add_option( "model", model_path, "model file" )->required();
    check->add_option( "--suite", suites, "suite name (repeatable)" );
    add_run_flags( check );

    auto* enumerate = app.add_subcommand( "enumerate-filters", "list every filter on the model carrier" );
    enumerate->add_option( "model", model_path, "model file" )->required();
    enumerate->add_option( "--budget", limits.enumeration, "enumeration cap" )->capture_default_str();

    std::string target_path;
    auto* power = app.add_subcommand( "power", "map-space report for two model files" );
    power->add_option( "source", model_path, "source model" )->required();
    power->add_option( "target", target_path, "target model" )->required();
    add_run_flags( power );

    CLI11_PARSE( app, argc, argv );

    try
    {
        if ( list )
        {
            for ( const auto& s : tconv::suite_catalogue() )
                std::cout << s << "\n";
            return 0;
        }
        if ( !demo.empty() )
        {
            const auto it = demos().find( demo );
            if ( it == demos().end() )
            {
                std::cerr << "unknown demo '" << demo << "'; available:";
                for ( const auto& [ k, v ] : demos() )
                    std::cerr << " " << k;
                std::cerr << "\n";
                return 2;
            }
            return emit( tconv::run_suite( load( it->second, demo, limits ), suites, seed, limits, timing ), format );
        }
        if ( *check )
            return emit( tconv::run_suite( load( read_file( model_path ), stem( model_path ), limits ), suites, seed,
                                           limits, timing ),
                         format );
        if ( *enumerate )
        {
            const auto m = load( read_file( model_path ), stem( model_path ), limits );
            if ( !m.group )
                throw tconv::error( tconv::error_kind::invalid_parameter, "model declares no group" );
            const auto all = tconv::enumerate_filters( *m.lattice, m.group->size(), limits.enumeration );
            for ( const auto& F : all )
                std::cout << tconv::describe( *m.lattice, F ) << "\n";
            std::cout << all.size() << " filters\n";
            return 0;
        }
        if ( *power )
        {
            const auto src = load( read_file( model_path ), stem( model_path ), limits );
            const auto dst = load( read_file( target_path ), stem( target_path ), limits );
            if ( !src.convergence || !dst.convergence )
                throw tconv::error( tconv::error_kind::invalid_parameter, "both models need a convergence block" );
            tconv::report r;
            r.model = src.name + " -> " + dst.name;
            r.seed = seed;
            r.limits = limits;
            const auto S = tconv::build_power( src.convergence, dst.convergence, limits.enumeration,
                                               limits.closure_rounds );
            r.add( "power", "continuous-maps", tconv::verdict_kind::pass,
                   std::to_string( S.maps.size() ) + " maps; map universe: " + S.map_universe->summary() );
            for ( std::size_t i = 0; i < S.maps.size(); ++i )
                r.add( "power", "map " + std::to_string( i ), tconv::verdict_kind::pass, tconv::map_name( S.maps[ i ], *S.target ) );
            if ( S.group )
                for ( const auto& c : tconv::check_power_group( S ) )
                    r.add( "power", c.name, c.result, "map universe: " + S.map_universe->summary() );
            else
                r.add( "power", "pointwise-group", S.closure );
            r.add( "power", "ev-continuity", tconv::ev_continuity_check( S ), "ev universe: " + S.ev_universe->summary() );
            return emit( r, format );
        }
        std::cout << app.help();
        return 0;
    }
    catch ( const tconv::error& e )
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
