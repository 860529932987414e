class G31 {
    static void f(int depth) {
        while (depth > 0) {
            depth--;
        }
        main(new String[0]);
    }

    public static void main(String[] args) {
        f(3);
    }
}
